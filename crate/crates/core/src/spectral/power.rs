//! Perron root and vector by shifted power iteration.

use serde::{Deserialize, Serialize};

use crate::error::SpectralError;
use crate::graph::{Graph, VertexSet};

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Relative slack when picking the largest Perron coordinate.
pub const ARGMAX_TIE: f64 = 1e-9;

/// Perron root with the vector that certifies it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub rho: f64,
    /// Normalized to max coordinate 1; zero outside the chosen component.
    pub perron: Vec<f64>,
    /// `‖A x − ρ x‖∞`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl SpectralCertificate {
    /// Vertex with the largest coordinate, smallest index among near-ties.
    pub fn argmax(&self) -> usize {
        let max = self.perron.iter().cloned().fold(f64::MIN, f64::max);
        self.perron
            .iter()
            .position(|&x| x >= max * (1.0 - ARGMAX_TIE))
            .unwrap_or(0)
    }
}

fn iteration_cap(n: usize) -> usize {
    (100.0 * n as f64 * ((n + 2) as f64).ln()) as usize + 10_000
}

/// Power iteration on `A + I` restricted to one component.
fn component_perron(g: &Graph, comp: &[usize], tol: f64) -> (f64, Vec<f64>, f64, usize, bool) {
    let k = comp.len();
    if k == 1 {
        return (0.0, vec![1.0], 0.0, 0, true);
    }
    let mut local = vec![usize::MAX; g.order()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let nbrs: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| g.neighborhood(v).iter().map(|w| local[w]).collect())
        .collect();
    let apply = |x: &[f64], out: &mut [f64]| {
        for (i, row) in nbrs.iter().enumerate() {
            out[i] = row.iter().map(|&j| x[j]).sum();
        }
    };

    let cap = iteration_cap(g.order());
    let mut x = vec![1.0; k];
    let mut ax = vec![0.0; k];
    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=cap {
        apply(&x, &mut ax);
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        rho = num / den;
        residual = x
            .iter()
            .zip(&ax)
            .map(|(a, b)| (b - rho * a).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return (rho, x, residual, it, true);
        }
        // x <- (A + I) x, rescaled to max 1
        let max = x.iter().zip(&ax).map(|(a, b)| a + b).fold(0.0, f64::max);
        for (xi, ai) in x.iter_mut().zip(&ax) {
            *xi = (*xi + ai) / max;
        }
    }
    (rho, x, residual, cap, false)
}

/// Spectral radius of `g`: the largest Perron root over its components.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralCertificate, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if !(tol > 0.0) {
        return Err(SpectralError::BadTolerance(tol));
    }
    let mut best: Option<(f64, Vec<f64>, f64, usize, VertexSet)> = None;
    let mut iterations = 0;
    let mut converged = true;
    for comp in g.components() {
        let verts = comp.to_vec();
        let (rho, x, res, it, ok) = component_perron(g, &verts, tol);
        iterations += it;
        converged &= ok;
        let better = match &best {
            None => true,
            Some((r, ..)) => rho > *r + tol,
        };
        if better {
            best = Some((rho, x, res, it, comp));
        }
    }
    let (rho, x, residual, _, comp) = best.expect("at least one component");
    let mut perron = vec![0.0; g.order()];
    for (v, xi) in comp.iter().zip(x) {
        perron[v] = xi;
    }
    Ok(SpectralCertificate {
        rho,
        perron,
        residual,
        iterations,
        converged,
    })
}

/// `spectral_radius` at the default tolerance; panics on the empty graph.
pub fn rho(g: &Graph) -> f64 {
    spectral_radius(g, DEFAULT_TOL).expect("non-empty graph").rho
}

/// Perron pair of a connected graph.
pub fn perron_vector(g: &Graph) -> Result<SpectralCertificate, SpectralError> {
    perron_vector_tol(g, DEFAULT_TOL)
}

pub fn perron_vector_tol(g: &Graph, tol: f64) -> Result<SpectralCertificate, SpectralError> {
    if g.order() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    spectral_radius(g, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn star_and_cycle() {
        let star = Graph::complete_bipartite(1, 4).unwrap();
        let c = spectral_radius(&star, DEFAULT_TOL).unwrap();
        assert!(c.converged && c.residual <= DEFAULT_TOL);
        assert!((c.rho - 2.0).abs() < 1e-12);
        assert!((c.perron[0] - 1.0).abs() < 1e-12);
        for leaf in 1..5 {
            assert!((c.perron[leaf] - 0.5).abs() < 1e-12);
        }
        assert!((rho(&Graph::cycle(4).unwrap()) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn k2_perron() {
        let c = perron_vector(&Graph::complete(2).unwrap()).unwrap();
        assert!((c.rho - 1.0).abs() < 1e-12);
        assert_eq!(c.perron, vec![1.0, 1.0]);
        assert_eq!(c.argmax(), 0);
    }

    #[test]
    fn s23_2_has_integer_radius() {
        let g = families::make_s(23, 2).unwrap();
        assert_eq!(g.size(), 43);
        assert!((rho(&g) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn s_minus_orbits() {
        let g = families::make_s_minus(10, 2).unwrap();
        let c = perron_vector(&g).unwrap();
        // K2 = {0, 1}, independents 2..=9, pendant 9 hangs on 0
        let common: Vec<f64> = (2..9).map(|v| c.perron[v]).collect();
        assert!(common.iter().all(|x| (x - common[0]).abs() < 1e-9));
        let pendant = c.perron[9];
        assert!(c.perron.iter().enumerate().all(|(v, &x)| v == 9 || x > pendant));
        assert_eq!(c.argmax(), 0);
    }

    #[test]
    fn disconnected_takes_max_component() {
        let g = Graph::from_edges(7, &[(0, 1), (2, 3), (2, 4), (2, 5), (2, 6)]).unwrap();
        let c = spectral_radius(&g, DEFAULT_TOL).unwrap();
        assert!((c.rho - 2.0).abs() < 1e-12);
        assert_eq!(&c.perron[..2], &[0.0, 0.0]);
        assert_eq!(perron_vector(&g), Err(SpectralError::Disconnected));
    }

    #[test]
    fn edge_cases() {
        assert_eq!(spectral_radius(&Graph::empty(0).unwrap(), 1e-12), Err(SpectralError::EmptyGraph));
        let k1 = spectral_radius(&Graph::empty(1).unwrap(), 1e-12).unwrap();
        assert_eq!(k1.rho, 0.0);
        assert!(matches!(
            spectral_radius(&Graph::complete(3).unwrap(), 0.0),
            Err(SpectralError::BadTolerance(_))
        ));
    }

    #[test]
    fn bipartite_converges_with_shift() {
        let p = Graph::path(20).unwrap();
        let c = spectral_radius(&p, DEFAULT_TOL).unwrap();
        let exact = 2.0 * (std::f64::consts::PI / 21.0).cos();
        assert!(c.converged);
        assert!((c.rho - exact).abs() < 1e-12);
    }
}
