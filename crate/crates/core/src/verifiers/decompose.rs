//! Neighbourhood decomposition around the apex vertex.

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, SpectralError};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{perron_vector, SpectralCertificate};
use crate::theta::contains_path;

/// Which of the allowed shapes a neighbourhood component has.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ComponentClass {
    /// Four vertices with a spanning 4-cycle; `edges` is 4, 5 or 6.
    C4Spanned { edges: usize },
    /// `K_{1,r}` plus one edge between leaves (`r = 2` is the triangle).
    S1 { r: usize },
    /// Adjacent centres with `a ≤ b` leaves.
    DoubleStar { a: usize, b: usize },
    /// `K_{1,r}`, including the singleton (`r = 0`).
    Star { r: usize },
    /// Contains a path on five vertices, listed in `witness`.
    Other { witness: Vec<usize> },
}

impl ComponentClass {
    pub fn is_other(&self) -> bool {
        matches!(self, ComponentClass::Other { .. })
    }

    pub fn is_tree(&self) -> bool {
        matches!(self, ComponentClass::DoubleStar { .. } | ComponentClass::Star { .. })
    }
}

fn has_spanning_c4(h: &Graph) -> bool {
    h.order() == 4
        && [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]
            .iter()
            .any(|c| (0..4).all(|i| h.has_edge(c[i], c[(i + 1) % 4])))
}

/// Shape of a connected graph.
pub fn classify_component(h: &Graph) -> Result<ComponentClass, GraphError> {
    if h.order() == 0 || !h.is_connected() {
        return Err(GraphError::Parameter("component must be non-empty and connected".into()));
    }
    let n = h.order();
    let m = h.size();
    let max_deg = h.degrees().into_iter().max().unwrap_or(0);
    if has_spanning_c4(h) {
        return Ok(ComponentClass::C4Spanned { edges: m });
    }
    if m + 1 == n {
        if max_deg + 1 == n {
            return Ok(ComponentClass::Star { r: n - 1 });
        }
        // a tree of diameter 3 is a double star: two adjacent non-leaves
        let inner: Vec<usize> = (0..n).filter(|&v| h.degree(v) > 1).collect();
        if inner.len() == 2 && h.has_edge(inner[0], inner[1]) {
            let a = h.degree(inner[0]) - 1;
            let b = h.degree(inner[1]) - 1;
            return Ok(ComponentClass::DoubleStar { a: a.min(b), b: a.max(b) });
        }
    }
    if m == n && n >= 3 && max_deg + 1 == n {
        return Ok(ComponentClass::S1 { r: n - 1 });
    }
    let witness = contains_path(h, 5)?.unwrap_or_default();
    Ok(ComponentClass::Other { witness })
}

/// One non-trivial component of `G[N(u*)]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeighbourComponent {
    pub vertices: VertexSet,
    pub class: ComponentClass,
    /// `∪_{u ∈ H} N_W(u)`.
    #[serde(rename = "WH")]
    pub w_h: VertexSet,
    /// `Σ_{u ∈ H} (d_H(u) − 1) x_u` with global Perron coordinates.
    pub zeta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub apex: usize,
    /// Isolated vertices of `G[N(u*)]`.
    #[serde(rename = "N0")]
    pub n0: VertexSet,
    #[serde(rename = "Nplus")]
    pub nplus: VertexSet,
    /// `V \ N[u*]`.
    #[serde(rename = "W")]
    pub w: VertexSet,
    /// Vertices at distance exactly 2 from the apex.
    #[serde(rename = "N2")]
    pub n2: VertexSet,
    #[serde(rename = "eW")]
    pub e_w: usize,
    #[serde(rename = "eNW")]
    pub e_nw: usize,
    /// `e(N(u*))`, which equals `e(N₊(u*))`.
    #[serde(rename = "eN")]
    pub e_n: usize,
    pub components: Vec<NeighbourComponent>,
    /// Number of non-trivial tree components.
    pub c: usize,
    pub certificate: SpectralCertificate,
}

impl DecompositionReport {
    pub fn x(&self, v: usize) -> f64 {
        self.certificate.perron[v]
    }

    pub fn x_apex(&self) -> f64 {
        self.x(self.apex)
    }

    pub fn zeta_total(&self) -> f64 {
        self.components.iter().map(|c| c.zeta).sum()
    }

    /// `Σ_{u ∈ N₀} x_u / x_{u*}`.
    pub fn n0_ratio(&self) -> f64 {
        self.n0.iter().map(|u| self.x(u)).sum::<f64>() / self.x_apex()
    }
}

/// Decomposes `g` around `apex`, or around the Perron argmax when `None`.
pub fn decompose_at(g: &Graph, apex: Option<usize>) -> Result<DecompositionReport, SpectralError> {
    let certificate = perron_vector(g)?;
    decompose_with(g, apex, certificate)
}

/// Same as [`decompose_at`] with a certificate computed elsewhere.
pub fn decompose_with(
    g: &Graph,
    apex: Option<usize>,
    certificate: SpectralCertificate,
) -> Result<DecompositionReport, SpectralError> {
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let apex = apex.unwrap_or_else(|| certificate.argmax());
    if apex >= g.order() {
        return Err(GraphError::VertexOutOfRange { vertex: apex, n: g.order() }.into());
    }
    let nbhd = g.neighborhood(apex);
    let n0: VertexSet = nbhd.iter().filter(|&u| g.degree_in(u, &nbhd) == 0).collect();
    let nplus = nbhd.difference(&n0);
    let w = g.vertices().difference(&g.closed_neighborhood(apex));
    let n2 = g.second_neighborhood(apex);
    let (sub, map) = g.induced_subgraph(&nplus);
    let mut components = Vec::new();
    let mut c = 0;
    for comp in sub.components() {
        let vertices: VertexSet = comp.iter().map(|i| map[i]).collect();
        let (h, _) = g.induced_subgraph(&vertices);
        let class = classify_component(&h)?;
        if class.is_tree() {
            c += 1;
        }
        let w_h = vertices
            .iter()
            .fold(VertexSet::new(), |acc, u| acc.union(&g.neighbors_in(u, &w)));
        let zeta = vertices
            .iter()
            .map(|u| (g.degree_in(u, &vertices) as f64 - 1.0) * certificate.perron[u])
            .sum();
        components.push(NeighbourComponent { vertices, class, w_h, zeta });
    }
    Ok(DecompositionReport {
        apex,
        e_w: g.edge_count_within(&w),
        e_nw: g.edge_count_between(&nbhd, &w),
        e_n: g.edge_count_within(&nbhd),
        n0,
        nplus,
        w,
        n2,
        components,
        c,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_double_star, make_s_minus, make_theta};

    #[test]
    fn classify_examples() {
        assert_eq!(classify_component(&Graph::complete(3).unwrap()).unwrap(), ComponentClass::S1 { r: 2 });
        assert_eq!(
            classify_component(&Graph::path(4).unwrap()).unwrap(),
            ComponentClass::DoubleStar { a: 1, b: 1 }
        );
        match classify_component(&Graph::path(5).unwrap()).unwrap() {
            ComponentClass::Other { witness } => assert_eq!(witness.len(), 5),
            c => panic!("P5 classified as {c:?}"),
        }
        assert_eq!(classify_component(&Graph::empty(1).unwrap()).unwrap(), ComponentClass::Star { r: 0 });
        assert_eq!(
            classify_component(&Graph::complete(4).unwrap()).unwrap(),
            ComponentClass::C4Spanned { edges: 6 }
        );
        assert_eq!(
            classify_component(&make_double_star(3, 2).unwrap()).unwrap(),
            ComponentClass::DoubleStar { a: 2, b: 3 }
        );
        assert!(classify_component(&Graph::empty(2).unwrap()).is_err());
    }

    #[test]
    fn s_minus_decomposition() {
        let g = make_s_minus(10, 2).unwrap();
        let d = decompose_at(&g, None).unwrap();
        assert_eq!(d.apex, 0);
        assert_eq!(d.n0.to_vec(), vec![9]);
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].class, ComponentClass::Star { r: 7 });
        assert!(d.w.is_empty());
        assert_eq!((d.e_w, d.c), (0, 1));
    }

    #[test]
    fn star_decomposition() {
        let g = Graph::complete_bipartite(1, 5).unwrap();
        let d = decompose_at(&g, Some(0)).unwrap();
        assert_eq!(d.n0.len(), 5);
        assert!(d.nplus.is_empty() && d.w.is_empty());
    }

    #[test]
    fn theta_decomposition() {
        let g = make_theta(3, 3).unwrap();
        let d = decompose_at(&g, Some(0)).unwrap();
        assert_eq!(d.w.len(), 2);
        assert_eq!(d.n0.len(), 3);
        assert_eq!((d.e_w, d.e_nw), (0, 4));
    }

    #[test]
    fn partition_law() {
        for seed in 0..30 {
            let mut r = crate::random::rng(seed);
            let g = crate::random::connected_with(11, 0.25, &mut r);
            let d = decompose_at(&g, None).unwrap();
            let parts = [VertexSet::singleton(d.apex), d.n0, d.nplus, d.w];
            assert_eq!(parts.iter().map(VertexSet::len).sum::<usize>(), g.order());
            let union = parts.iter().fold(VertexSet::new(), |a, p| a.union(p));
            assert_eq!(union, g.vertices());
        }
    }
}
