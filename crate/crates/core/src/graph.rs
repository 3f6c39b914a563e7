//! Simple undirected graphs stored as bitset adjacency rows.
//!
//! Vertices are `0..n`. Rows are fixed-width bitsets of [`MAX_VERTICES`] bits;
//! everything in the search regime stays inside the first word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

const WORDS: usize = 8;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = WORDS * 64;

/// A set of vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = VertexSet::new();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
        }
        out
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            m: 0,
            adj: vec![VertexSet::new(); n],
        })
    }

    /// Builds a graph from an edge list; repeated edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::Parameter(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    /// Adds `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        debug_assert!(self.is_consistent());
        Ok(true)
    }

    /// Removes `uv`; returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.m -= 1;
        debug_assert!(self.is_consistent());
        Ok(true)
    }

    /// Appends a new isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Result<usize, GraphError> {
        if self.n == MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n + 1));
        }
        self.adj.push(VertexSet::new());
        self.n += 1;
        Ok(self.n - 1)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `N(u)`.
    #[inline]
    pub fn neighborhood(&self, u: usize) -> VertexSet {
        self.adj[u]
    }

    /// `N[u] = N(u) ∪ {u}`.
    pub fn closed_neighborhood(&self, u: usize) -> VertexSet {
        let mut s = self.adj[u];
        s.insert(u);
        s
    }

    /// Vertices at distance exactly two from `u`.
    pub fn second_neighborhood(&self, u: usize) -> VertexSet {
        let mut reach = VertexSet::new();
        for v in self.adj[u].iter() {
            reach = reach.union(&self.adj[v]);
        }
        reach.difference(&self.closed_neighborhood(u))
    }

    /// `N_S(v) = N(v) ∩ S`.
    pub fn neighbors_in(&self, v: usize, s: &VertexSet) -> VertexSet {
        self.adj[v].intersection(s)
    }

    /// `d_S(v) = |N(v) ∩ S|`.
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> usize {
        self.neighbors_in(v, s).len()
    }

    /// Induced subgraph `G[S]`; vertex `i` of the result is `map[i]` in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph {
            n: map.len(),
            m: 0,
            adj: vec![VertexSet::new(); map.len()],
        };
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].intersection(s).iter() {
                h.adj[i].insert(index[w]);
            }
        }
        h.m = h.adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        (h, map)
    }

    /// `e(S)`: edges with both ends in `S`.
    pub fn edge_count_within(&self, s: &VertexSet) -> usize {
        s.iter()
            .filter(|&v| v < self.n)
            .map(|v| self.adj[v].intersection(s).len())
            .sum::<usize>()
            / 2
    }

    /// `e(S,T)`: edges with one end in `S` and the other in `T`. Sets may
    /// overlap, in which case an edge inside `S ∩ T` is counted once.
    pub fn edge_count_between(&self, s: &VertexSet, t: &VertexSet) -> usize {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| (s.contains(u) && t.contains(v)) || (s.contains(v) && t.contains(u)))
            .count()
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let comp = self.component_of(start);
            seen = seen.union(&comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: usize) -> VertexSet {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                next = next.union(&self.adj[v]);
            }
            frontier = next.difference(&comp);
            comp = comp.union(&frontier);
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[src] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.adj[u].iter() {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Two-colouring if one exists, otherwise an odd cycle.
    pub fn bipartition(&self) -> Bipartition {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for root in 0..self.n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].iter() {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        parent[v] = u;
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return Bipartition::OddCycle(odd_cycle(&parent, u, v));
                    }
                }
            }
        }
        let left = (0..self.n).filter(|&v| color[v] == 0).collect();
        let right = (0..self.n).filter(|&v| color[v] == 1).collect();
        Bipartition::Parts(left, right)
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartition::Parts(..))
    }

    /// Applies `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![VertexSet::new(); self.n];
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                adj[perm[u]].insert(perm[v]);
            }
        }
        Graph {
            n: self.n,
            m: self.m,
            adj,
        }
    }

    /// Removes isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: VertexSet = (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect();
        self.induced_subgraph(&keep).0
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| i64::from(self.has_edge(u, v))).collect())
            .collect()
    }

    /// Checks symmetry, loop-freeness and the cached edge count.
    pub fn is_consistent(&self) -> bool {
        let full = VertexSet::full(self.n);
        let mut total = 0;
        for u in 0..self.n {
            let row = self.adj[u];
            if row.contains(u) || !row.is_subset(&full) {
                return false;
            }
            if row.iter().any(|v| !self.adj[v].contains(u)) {
                return false;
            }
            total += row.len();
        }
        total == 2 * self.m
    }

    /// Parses one graph6 line.
    pub fn from_graph6(text: &str) -> Result<Self, GraphError> {
        crate::graph6::parse(text)
    }

    /// Encodes as a graph6 line (no trailing newline).
    pub fn to_graph6(&self) -> String {
        crate::graph6::emit(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.m, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// Result of a two-colouring attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Parts(VertexSet, VertexSet),
    /// Vertices of an odd cycle, in cyclic order.
    OddCycle(Vec<usize>),
}

fn odd_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let chain = |mut x: usize| {
        let mut out = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            out.push(x);
        }
        out
    };
    let pu = chain(u);
    let pv = chain(v);
    // strip the common tail (shared ancestors) but keep the lowest one
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.size(), 1);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.degrees().iter().all(|&d| d == 2));
        let dup = Graph::from_edges(3, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!((dup.order(), dup.size()), (3, 1));
    }

    #[test]
    fn from_edges_errors() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::Loop(1))));
    }

    #[test]
    fn neighborhoods() {
        let star = Graph::complete_bipartite(1, 3).unwrap();
        assert_eq!(star.neighborhood(0).to_vec(), vec![1, 2, 3]);
        assert!(star.second_neighborhood(0).is_empty());
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.second_neighborhood(0).to_vec(), vec![2]);
        assert_eq!(p4.closed_neighborhood(1).to_vec(), vec![0, 1, 2]);
        let c4 = Graph::cycle(4).unwrap();
        for u in 0..4 {
            assert_eq!(c4.second_neighborhood(u).len(), 1);
        }
    }

    #[test]
    fn edge_counts() {
        let k4 = Graph::complete(4).unwrap();
        let s: VertexSet = [0, 1, 2].into_iter().collect();
        let (h, map) = k4.induced_subgraph(&s);
        assert_eq!((h.order(), h.size()), (3, 3));
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(k4.edge_count_within(&s), 3);

        let c4 = Graph::cycle(4).unwrap();
        let a: VertexSet = [0, 2].into_iter().collect();
        let b: VertexSet = [1, 3].into_iter().collect();
        assert_eq!(c4.edge_count_between(&a, &b), 4);
        assert_eq!(c4.edge_count_within(&a), 0);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(g.components().len(), 3);

        let c5 = Graph::cycle(5).unwrap();
        match c5.bipartition() {
            Bipartition::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                for i in 0..c.len() {
                    assert!(c5.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }

        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        match k23.bipartition() {
            Bipartition::Parts(a, b) => {
                let mut sizes = [a.len(), b.len()];
                sizes.sort();
                assert_eq!(sizes, [2, 3]);
            }
            other => panic!("expected parts, got {other:?}"),
        }
    }

    #[test]
    fn odd_cycle_witness_in_larger_graph() {
        // triangle hanging off a path
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 2), (4, 5)]).unwrap();
        match g.bipartition() {
            Bipartition::OddCycle(c) => {
                assert_eq!(c.len() % 2, 1);
                for i in 0..c.len() {
                    assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn multiword_rows() {
        let mut g = Graph::empty(200).unwrap();
        g.add_edge(3, 190).unwrap();
        g.add_edge(70, 190).unwrap();
        assert_eq!(g.neighborhood(190).to_vec(), vec![3, 70]);
        assert_eq!(g.second_neighborhood(3).to_vec(), vec![70]);
        assert!(g.is_consistent());
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }
}
