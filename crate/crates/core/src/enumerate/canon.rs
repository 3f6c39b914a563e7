//! Canonical labelling by refinement and individualization.
//!
//! Leaves of the search tree are discrete partitions; the canonical form is
//! the largest relabelled adjacency over all leaves. Subtrees are skipped
//! when an automorphism found earlier maps them onto an explored one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::Graph;
use crate::refine::{individualize, refine, Cells};

/// Largest order accepted by [`canonical_form`].
pub const CANON_MAX_VERTICES: usize = 32;

/// graph6 text of the canonically relabelled graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        Graph::from_graph6(&self.0).expect("canonical form is valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Key = Vec<u32>;

struct Leaf {
    labels: Vec<usize>,
    key: Key,
    prefix: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn key(&self, labels: &[usize]) -> Key {
        let mut rows = vec![0u32; self.g.order()];
        for (u, v) in self.g.edges() {
            rows[labels[u]] |= 1 << labels[v];
            rows[labels[v]] |= 1 << labels[u];
        }
        rows
    }

    /// Orbit representative of every vertex under the generators fixing `prefix`.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.g.order()).collect();
        for gamma in &self.generators {
            if prefix.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (v, &w) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..parent.len()).map(|v| find(&mut parent, v)).collect()
    }

    /// Records `gamma = other⁻¹ ∘ labels` and returns the divergence depth.
    fn automorphism(&mut self, labels: &[usize], other: &Leaf, prefix: &[usize]) -> usize {
        let mut inverse = vec![0; labels.len()];
        for (v, &l) in other.labels.iter().enumerate() {
            inverse[l] = v;
        }
        let gamma: Vec<usize> = labels.iter().map(|&l| inverse[l]).collect();
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.generators.push(gamma);
        }
        common_prefix(prefix, &other.prefix)
    }

    /// Explores the subtree at `cells`; `Some(d)` asks ancestors to unwind to depth `d`.
    fn visit(&mut self, mut cells: Cells, prefix: &mut Vec<usize>) -> Option<usize> {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let mut labels = vec![0; self.g.order()];
            for (pos, cell) in cells.iter().enumerate() {
                labels[cell[0]] = pos;
            }
            let key = self.key(&labels);
            let leaf = Leaf { labels, key, prefix: prefix.clone() };
            let Some(first) = self.first.take() else {
                self.best = Some(Leaf { labels: leaf.labels.clone(), key: leaf.key.clone(), prefix: leaf.prefix.clone() });
                self.first = Some(leaf);
                return None;
            };
            let jump = if leaf.key == first.key {
                Some(self.automorphism(&leaf.labels, &first, prefix))
            } else {
                None
            };
            self.first = Some(first);
            if jump.is_some() {
                return jump;
            }
            let best = self.best.take().expect("best set with first");
            return match leaf.key.cmp(&best.key) {
                std::cmp::Ordering::Equal => {
                    let d = self.automorphism(&leaf.labels, &best, prefix);
                    self.best = Some(best);
                    Some(d)
                }
                std::cmp::Ordering::Greater => {
                    self.best = Some(leaf);
                    None
                }
                std::cmp::Ordering::Less => {
                    self.best = Some(best);
                    None
                }
            };
        };
        let depth = prefix.len();
        let children = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for v in children {
            if !explored.is_empty() {
                let orbit = self.orbits(prefix);
                if explored.iter().any(|&w| orbit[w] == orbit[v]) {
                    continue;
                }
            }
            explored.push(v);
            prefix.push(v);
            let jump = self.visit(individualize(&cells, v), prefix);
            prefix.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }
}

/// Canonical relabelling `old → new` of `g`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if g.order() > CANON_MAX_VERTICES {
        return Err(GraphError::TooManyVertices(g.order()));
    }
    if g.order() == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    search.visit(vec![(0..g.order()).collect()], &mut Vec::new());
    Ok(search.best.expect("at least one leaf").labels)
}

/// graph6 of the canonically relabelled graph; equal exactly for isomorphic inputs.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let labels = canonical_labeling(g)?;
    Ok(CanonicalForm(g.relabel(&labels).to_graph6()))
}

/// Isomorphism test through canonical forms.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_s_minus;
    use crate::random::{gnp, permutation, rng};

    #[test]
    fn c4_labelings_agree() {
        let a = Graph::cycle(4).unwrap();
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn p4_vs_claw() {
        let p4 = Graph::path(4).unwrap();
        let claw = Graph::complete_bipartite(1, 3).unwrap();
        assert_ne!(canonical_form(&p4).unwrap(), canonical_form(&claw).unwrap());
    }

    #[test]
    fn s_minus_relabelings() {
        let g = make_s_minus(10, 2).unwrap();
        let mut r = rng(7);
        let a = g.relabel(&permutation(10, &mut r));
        let b = g.relabel(&permutation(10, &mut r));
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn highly_symmetric_inputs_finish() {
        let matching = Graph::from_edges(24, &(0..12).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>()).unwrap();
        let c = canonical_form(&matching).unwrap();
        assert_eq!(c.graph().size(), 12);
        let k = Graph::complete(20).unwrap();
        assert_eq!(canonical_form(&k).unwrap().graph(), k);
        let petersen = Graph::from_graph6("IheA@GUAo").unwrap();
        let mut r = rng(1);
        let shuffled = petersen.relabel(&permutation(10, &mut r));
        assert!(is_isomorphic(&petersen, &shuffled).unwrap());
    }

    #[test]
    fn random_graphs_under_relabeling() {
        let mut r = rng(99);
        for seed in 0..40 {
            let g = gnp(12, 0.35, seed);
            let h = g.relabel(&permutation(12, &mut r));
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }

    #[test]
    fn size_cap() {
        assert!(canonical_form(&Graph::empty(33).unwrap()).is_err());
        assert_eq!(canonical_form(&Graph::empty(0).unwrap()).unwrap().as_str(), "?");
    }
}
