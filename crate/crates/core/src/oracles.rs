//! Slow reference computations used to cross-check the fast paths.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::enumerate::{canonical_form, CanonicalForm};
use crate::error::GraphError;
use crate::graph::Graph;

/// Largest size the labeled oracle accepts.
pub const LABELED_ORACLE_MAX: usize = 7;

/// Every labeled graph on exactly `n` vertices with `m` edges and no isolated vertex.
pub fn labeled_graphs(n: usize, m: usize) -> Vec<Graph> {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(m);
    let mut cover = vec![0usize; n];

    #[allow(clippy::too_many_arguments)]
    fn go(
        edges: &[(usize, usize)],
        start: usize,
        m: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        cover: &mut [usize],
        out: &mut Vec<Graph>,
    ) {
        let uncovered = cover.iter().filter(|&&c| c == 0).count();
        let remaining = m - chosen.len();
        if uncovered > 2 * remaining {
            return;
        }
        if remaining == 0 {
            let list: Vec<(usize, usize)> = chosen.iter().map(|&i| edges[i]).collect();
            out.push(Graph::from_edges(n, &list).expect("valid edges"));
            return;
        }
        for i in start..edges.len() {
            let (a, b) = edges[i];
            // vertices below `a` can no longer gain an edge
            if cover[..a].contains(&0) {
                return;
            }
            chosen.push(i);
            cover[a] += 1;
            cover[b] += 1;
            go(edges, i + 1, m, n, chosen, cover, out);
            cover[a] -= 1;
            cover[b] -= 1;
            chosen.pop();
        }
    }

    go(&edges, 0, m, n, &mut chosen, &mut cover, &mut out);
    out
}

/// Number of labeled graphs examined and the isomorphism classes found, for
/// all `n ≤ 2m`.
pub fn labeled_classes(m: usize) -> Result<(usize, Vec<CanonicalForm>), GraphError> {
    if m == 0 || m > LABELED_ORACLE_MAX {
        return Err(GraphError::Parameter(format!(
            "labeled oracle needs 1 <= m <= {LABELED_ORACLE_MAX}, got {m}"
        )));
    }
    let mut labeled = 0;
    let mut classes = BTreeSet::new();
    for n in 2..=2 * m {
        if n * (n - 1) / 2 < m {
            continue;
        }
        let graphs = labeled_graphs(n, m);
        labeled += graphs.len();
        let forms: BTreeSet<CanonicalForm> = graphs
            .par_iter()
            .map(|g| canonical_form(g).expect("n <= 2m fits the canonical cap"))
            .collect();
        classes.extend(forms);
    }
    Ok((labeled, classes.into_iter().collect()))
}
