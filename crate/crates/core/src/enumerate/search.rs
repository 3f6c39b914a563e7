//! Exhaustive "max ρ over θ(1,p,q)-free graphs of size m".

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canon::CanonicalForm;
use super::generate::{enumerate_canonical_with_budget, ENUMERATION_BUDGET};
use crate::error::GraphError;
use crate::spectral::rho;
use crate::theta::{contains_theta, normalize_lengths};

/// Tie tolerance for the argmax set.
pub const ARGMAX_TOL: f64 = 1e-9;

/// Bumped whenever detector or enumeration output could change; cached
/// reports carrying another version are recomputed.
pub const DETECTOR_VERSION: &str = "theta-dfs/2 canon-refine/1";

pub const SCOPE_NOTE: &str = "exhaustive search at desk scale only; small-m results are regression data and say nothing about the large-m regime";

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub elapsed_ms: u128,
    pub jobs: usize,
}

/// Result of one exhaustive search; `runtime` is ignored by `==`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub m: usize,
    pub predicate: String,
    pub total: usize,
    pub survivors: usize,
    pub best_rho: Option<f64>,
    pub argmax: Vec<CanonicalForm>,
    pub detector_version: String,
    pub note: String,
    #[serde(default)]
    pub runtime: RuntimeStats,
}

impl PartialEq for ExtremalReport {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.predicate == other.predicate
            && self.total == other.total
            && self.survivors == other.survivors
            && self.best_rho.map(f64::to_bits) == other.best_rho.map(f64::to_bits)
            && self.argmax == other.argmax
            && self.detector_version == other.detector_version
            && self.note == other.note
    }
}

/// Every θ(1,p,q)-free class with `m` edges and its spectral radius, sorted by form.
pub fn free_survivors(m: usize, p: usize, q: usize, budget: usize) -> Result<(usize, Vec<(CanonicalForm, f64)>), GraphError> {
    let (p, q) = normalize_lengths(p, q)?;
    let forms = enumerate_canonical_with_budget(m, budget)?;
    let total = forms.len();
    let survivors: Vec<(CanonicalForm, f64)> = forms
        .into_par_iter()
        .filter_map(|form| {
            let g = form.graph();
            match contains_theta(&g, p, q).expect("lengths checked") {
                Some(_) => None,
                None => Some((form, rho(&g))),
            }
        })
        .collect();
    Ok((total, survivors))
}

/// Exhaustive search with the default budget.
pub fn extremal_search(m: usize, pattern: (usize, usize), jobs: usize) -> Result<ExtremalReport, GraphError> {
    extremal_search_with_budget(m, pattern, jobs, ENUMERATION_BUDGET)
}

pub fn extremal_search_with_budget(
    m: usize,
    (p, q): (usize, usize),
    jobs: usize,
    budget: usize,
) -> Result<ExtremalReport, GraphError> {
    let (p, q) = normalize_lengths(p, q)?;
    let start = Instant::now();
    let jobs = jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| GraphError::Parameter(format!("thread pool: {e}")))?;
    let (total, survivors) = pool.install(|| free_survivors(m, p, q, budget))?;
    let best_rho = survivors.iter().map(|s| s.1).fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
    let mut argmax: Vec<CanonicalForm> = match best_rho {
        Some(best) => survivors.iter().filter(|s| s.1 >= best - ARGMAX_TOL).map(|s| s.0.clone()).collect(),
        None => Vec::new(),
    };
    argmax.sort();
    Ok(ExtremalReport {
        m,
        predicate: format!("theta(1,{p},{q})-free"),
        total,
        survivors: survivors.len(),
        best_rho,
        argmax,
        detector_version: DETECTOR_VERSION.to_string(),
        note: SCOPE_NOTE.to_string(),
        runtime: RuntimeStats {
            elapsed_ms: start.elapsed().as_millis(),
            jobs,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_form;
    use crate::graph::Graph;

    #[test]
    fn m4_everything_survives() {
        let r = extremal_search(4, (3, 3), 2).unwrap();
        assert_eq!(r.total, 11);
        assert_eq!(r.survivors, 11);
        // the paw beats K_{1,4}: largest root of x^4 - 4x^2 - 2x + 1
        let paw_rho = crate::spectral::Polynomial::from_i64(&[1, -2, -4, 0, 1])
            .largest_real_root(None, None)
            .unwrap();
        assert!((r.best_rho.unwrap() - paw_rho).abs() < 1e-9);
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(r.argmax, vec![canonical_form(&paw).unwrap()]);
        assert!(r.best_rho.unwrap() > 2.0);
    }

    #[test]
    fn theta_itself_is_excluded_at_m7() {
        let (total, survivors) = free_survivors(7, 3, 3, ENUMERATION_BUDGET).unwrap();
        let theta = canonical_form(&crate::families::make_theta(3, 3).unwrap()).unwrap();
        assert!(survivors.iter().all(|s| s.0 != theta));
        assert_eq!(total - survivors.len(), 1);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let a = extremal_search(6, (2, 2), 1).unwrap();
        let b = extremal_search(6, (2, 2), 4).unwrap();
        assert_eq!(a, b);
    }
}
