//! Subgraph detection for theta graphs `θ(1,p,q)` and paths.
//!
//! All detectors work in the subgraph sense (not induced).

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

/// Largest pattern accepted by [`oracle_contains_subgraph`].
pub const ORACLE_MAX_PATTERN: usize = 8;

/// An embedded `θ(1,p,q)`: the edge `anchors` plus two internally disjoint
/// paths between the same anchors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWitness {
    pub anchors: (usize, usize),
    /// `p + 1` vertices from `anchors.0` to `anchors.1`, with `p <= q`.
    pub path_p: Vec<usize>,
    /// `q + 1` vertices from `anchors.0` to `anchors.1`.
    pub path_q: Vec<usize>,
}

impl ThetaWitness {
    /// Re-checks every structural claim against `g`. The lengths may be given in either order.
    pub fn is_valid(&self, g: &Graph, p: usize, q: usize) -> bool {
        let (p, q) = (p.min(q), p.max(q));
        let (u, v) = self.anchors;
        if u == v || !g.has_edge(u, v) {
            return false;
        }
        let path_ok = |path: &[usize], len: usize| {
            path.len() == len + 1
                && path.first() == Some(&u)
                && path.last() == Some(&v)
                && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
        };
        if !path_ok(&self.path_p, p) || !path_ok(&self.path_q, q) {
            return false;
        }
        let inner_p = &self.path_p[1..self.path_p.len() - 1];
        let inner_q = &self.path_q[1..self.path_q.len() - 1];
        let mut seen = VertexSet::from_iter([u, v]);
        for &x in inner_p.iter().chain(inner_q) {
            if x >= g.order() || seen.contains(x) {
                return false;
            }
            seen.insert(x);
        }
        true
    }
}

/// Normalizes the lengths so that `p <= q`, rejecting `p < 2`.
pub fn normalize_lengths(p: usize, q: usize) -> Result<(usize, usize), GraphError> {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    if p < 2 {
        return Err(GraphError::Parameter(format!(
            "theta path lengths must be at least 2, got ({p}, {q})"
        )));
    }
    Ok((p, q))
}

struct PathSearch<'a> {
    g: &'a Graph,
    target: usize,
    dist: &'a [usize],
}

impl PathSearch<'_> {
    /// Extends `path` to a simple path ending at `target` with exactly
    /// `remaining` more edges, avoiding `blocked`.
    fn extend<F>(&self, path: &mut Vec<usize>, blocked: &mut VertexSet, remaining: usize, found: &mut F) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        let x = *path.last().expect("path starts at an anchor");
        if remaining == 0 {
            return x == self.target && found(path);
        }
        for y in self.g.neighborhood(x).iter() {
            if y == self.target {
                if remaining == 1 {
                    path.push(y);
                    let done = found(path);
                    path.pop();
                    if done {
                        return true;
                    }
                }
                continue;
            }
            if blocked.contains(y) || self.dist[y] > remaining - 1 {
                continue;
            }
            blocked.insert(y);
            path.push(y);
            let done = self.extend(path, blocked, remaining - 1, found);
            path.pop();
            blocked.remove(y);
            if done {
                return true;
            }
        }
        false
    }
}

/// First `θ(1,p,q)` found, scanning edges and neighbours in ascending order.
pub fn contains_theta(g: &Graph, p: usize, q: usize) -> Result<Option<ThetaWitness>, GraphError> {
    let (p, q) = normalize_lengths(p, q)?;
    if g.order() < p + q || g.size() < p + q + 1 {
        return Ok(None);
    }
    for (u, v) in g.edges() {
        let dist = g.distances_from(v);
        if dist[u] == usize::MAX {
            continue;
        }
        let search = PathSearch { g, target: v, dist: &dist };
        let mut witness = None;
        let mut path = vec![u];
        let mut blocked = VertexSet::singleton(u);
        search.extend(&mut path, &mut blocked, p, &mut |path_p: &[usize]| {
            let mut blocked_q: VertexSet = path_p[..path_p.len() - 1].iter().copied().collect();
            let mut path_q = vec![u];
            search.extend(&mut path_q, &mut blocked_q, q, &mut |found_q: &[usize]| {
                witness = Some(ThetaWitness {
                    anchors: (u, v),
                    path_p: path_p.to_vec(),
                    path_q: found_q.to_vec(),
                });
                true
            })
        });
        if witness.is_some() {
            return Ok(witness);
        }
    }
    Ok(None)
}

/// No subgraph `θ(1,3,3)`.
pub fn is_theta133_free(g: &Graph) -> bool {
    contains_theta(g, 3, 3).expect("valid lengths").is_none()
}

/// A simple path on `k` vertices, if `g` has one.
pub fn contains_path(g: &Graph, k: usize) -> Result<Option<Vec<usize>>, GraphError> {
    if k == 0 {
        return Err(GraphError::Parameter("path must have at least one vertex".into()));
    }
    if k > g.order() {
        return Ok(None);
    }
    fn grow(g: &Graph, path: &mut Vec<usize>, used: &mut VertexSet, k: usize) -> bool {
        if path.len() == k {
            return true;
        }
        let x = *path.last().unwrap();
        for y in g.neighborhood(x).difference(used).iter() {
            used.insert(y);
            path.push(y);
            if grow(g, path, used, k) {
                return true;
            }
            path.pop();
            used.remove(y);
        }
        false
    }
    for s in 0..g.order() {
        let mut path = vec![s];
        let mut used = VertexSet::singleton(s);
        if grow(g, &mut path, &mut used, k) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Reference check by enumerating injections `V(H) → V(G)`.
///
/// Pattern vertices are placed in decreasing-degree order; a candidate image
/// must have at least the pattern degree and every pattern edge back to an
/// already placed vertex must be present.
pub fn oracle_contains_subgraph(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    Ok(oracle_embedding(g, h)?.is_some())
}

/// The injection found by [`oracle_contains_subgraph`], indexed by pattern vertex.
pub fn oracle_embedding(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    if h.order() > ORACLE_MAX_PATTERN {
        return Err(GraphError::Parameter(format!(
            "pattern has {} vertices, oracle accepts at most {ORACLE_MAX_PATTERN}",
            h.order()
        )));
    }
    if h.order() > g.order() || h.size() > g.size() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..h.order()).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(h.degree(x)));
    let mut image = vec![usize::MAX; h.order()];
    let mut used = VertexSet::new();

    fn place(g: &Graph, h: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: &mut VertexSet) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..g.order() {
            if used.contains(y) || g.degree(y) < h.degree(x) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| !h.has_edge(x, w) || g.has_edge(y, image[w]));
            if !consistent {
                continue;
            }
            image[x] = y;
            used.insert(y);
            if place(g, h, order, depth + 1, image, used) {
                return true;
            }
            used.remove(y);
            image[x] = usize::MAX;
        }
        false
    }

    Ok(place(g, h, &order, 0, &mut image, &mut used).then_some(image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_double_star, make_s_minus, make_theta};

    #[test]
    fn theta_contains_itself() {
        let t = make_theta(3, 3).unwrap();
        let w = contains_theta(&t, 3, 3).unwrap().expect("self-containment");
        assert!(w.is_valid(&t, 3, 3));
    }

    #[test]
    fn s_minus_is_free() {
        assert!(is_theta133_free(&make_s_minus(10, 2).unwrap()));
    }

    #[test]
    fn complete_graphs() {
        let k4 = Graph::complete(4).unwrap();
        let w = contains_theta(&k4, 2, 2).unwrap().unwrap();
        assert!(w.is_valid(&k4, 2, 2));
        assert!(is_theta133_free(&Graph::complete(5).unwrap()));
        assert!(!is_theta133_free(&Graph::complete(6).unwrap()));
    }

    #[test]
    fn length_normalization() {
        assert_eq!(normalize_lengths(4, 2).unwrap(), (2, 4));
        assert!(contains_theta(&Graph::complete(4).unwrap(), 1, 3).is_err());
        let t = make_theta(2, 4).unwrap();
        assert!(contains_theta(&t, 4, 2).unwrap().is_some());
    }

    #[test]
    fn paths() {
        let p5 = Graph::path(5).unwrap();
        assert_eq!(contains_path(&p5, 5).unwrap().map(|p| p.len()), Some(5));
        let star = Graph::complete_bipartite(1, 4).unwrap();
        assert!(contains_path(&star, 4).unwrap().is_none());
        assert!(contains_path(&star, 3).unwrap().is_some());
        let d22 = make_double_star(2, 2).unwrap();
        assert!(contains_path(&d22, 5).unwrap().is_none());
        assert!(contains_path(&d22, 4).unwrap().is_some());
        assert!(contains_path(&p5, 0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(oracle_contains_subgraph(&c4, &Graph::path(3).unwrap()).unwrap());
        let star = Graph::complete_bipartite(1, 4).unwrap();
        assert!(!oracle_contains_subgraph(&star, &Graph::complete(3).unwrap()).unwrap());
        let sm = make_s_minus(10, 2).unwrap();
        assert!(!oracle_contains_subgraph(&sm, &make_theta(3, 3).unwrap()).unwrap());
        assert!(oracle_contains_subgraph(&sm, &Graph::complete(9).unwrap()).is_err());
    }

    #[test]
    fn witness_validation_rejects_tampering() {
        let t = make_theta(3, 3).unwrap();
        let mut w = contains_theta(&t, 3, 3).unwrap().unwrap();
        w.path_q = w.path_p.clone();
        assert!(!w.is_valid(&t, 3, 3));
    }
}
