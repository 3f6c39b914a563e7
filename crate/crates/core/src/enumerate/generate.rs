//! Isomorph-free generation of graphs by size.
//!
//! Level `m` is built from level `m − 1` by adding one edge in every possible
//! position: between two existing vertices, from an existing vertex to a new
//! one, or between two new vertices. Deleting any edge of an `m`-edge graph
//! (and then its isolated vertices) lands in level `m − 1`, so nothing is
//! missed. Duplicates are removed by canonical form.

use std::collections::BTreeSet;
use std::sync::Mutex;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm};
use crate::error::GraphError;
use crate::graph::Graph;

/// Default largest size for full enumeration.
pub const ENUMERATION_BUDGET: usize = 12;

static LEVELS: Mutex<Vec<Vec<CanonicalForm>>> = Mutex::new(Vec::new());

fn children(g: &Graph) -> Vec<Graph> {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                let mut h = g.clone();
                h.add_edge(u, v).expect("in range");
                out.push(h);
            }
        }
    }
    for u in 0..n {
        let mut h = g.clone();
        let w = h.add_vertex().expect("below vertex cap");
        h.add_edge(u, w).expect("in range");
        out.push(h);
    }
    let mut h = g.clone();
    let a = h.add_vertex().expect("below vertex cap");
    let b = h.add_vertex().expect("below vertex cap");
    h.add_edge(a, b).expect("in range");
    out.push(h);
    out
}

fn next_level(prev: &[CanonicalForm]) -> Vec<CanonicalForm> {
    let found: BTreeSet<CanonicalForm> = prev
        .par_iter()
        .flat_map_iter(|form| {
            children(&form.graph())
                .into_iter()
                .map(|h| canonical_form(&h).expect("at most 2m vertices"))
        })
        .collect();
    found.into_iter().collect()
}

/// Canonical forms of all graphs with `m` edges and no isolated vertices,
/// sorted by string, with `m` checked against `budget`.
pub fn enumerate_canonical_with_budget(m: usize, budget: usize) -> Result<Vec<CanonicalForm>, GraphError> {
    if m > budget {
        return Err(GraphError::Parameter(format!("m = {m} exceeds the enumeration budget {budget}")));
    }
    if 2 * m > super::canon::CANON_MAX_VERTICES {
        return Err(GraphError::TooManyVertices(2 * m));
    }
    if m == 0 {
        return Ok(vec![canonical_form(&Graph::empty(0)?)?]);
    }
    let mut levels = LEVELS.lock().unwrap_or_else(|e| e.into_inner());
    if levels.is_empty() {
        levels.push(vec![canonical_form(&Graph::complete(2)?)?]);
    }
    while levels.len() < m {
        let next = next_level(levels.last().unwrap());
        log::debug!("level {} has {} classes", levels.len() + 1, next.len());
        levels.push(next);
    }
    Ok(levels[m - 1].clone())
}

pub fn enumerate_canonical(m: usize) -> Result<Vec<CanonicalForm>, GraphError> {
    enumerate_canonical_with_budget(m, ENUMERATION_BUDGET)
}

/// One canonically labelled representative per isomorphism class of graphs
/// with `m` edges and minimum degree at least 1.
pub fn enumerate_by_size(m: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(enumerate_canonical(m)?.iter().map(CanonicalForm::graph).collect())
}
