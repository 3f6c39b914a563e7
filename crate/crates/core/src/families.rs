//! Constructors for the named graph families and their exact spectral radii.
//!
//! Labelling conventions:
//! - `S_{n,k}`: clique `0..k`, independent side `k..n`.
//! - `S⁻_{n,k}`: `S_{n,k}` without the edge from `n-1` to `k-1`.
//! - `G4(r,t)`: apex `0`, star centre `1`, star leaves `2..r+2`, pendants after.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};
use crate::spectral::{monic_quadratic_root, Polynomial, QuadExt};

fn param_err<T>(msg: String) -> Result<T, GraphError> {
    Err(GraphError::Parameter(msg))
}

/// `K_k` joined to `n − k` isolated vertices.
pub fn make_s(n: usize, k: usize) -> Result<Graph, GraphError> {
    if !(k >= 1 && n > k) {
        return param_err(format!("S_{{n,k}} needs n > k >= 1, got n={n}, k={k}"));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..k {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `S_{n,k}` minus one edge at a degree-`k` vertex, which becomes pendant
/// (for `k = 2`) or loses its edge to the highest clique vertex.
pub fn make_s_minus(n: usize, k: usize) -> Result<Graph, GraphError> {
    if !(k >= 1 && n >= k + 2) {
        return param_err(format!("S⁻_{{n,k}} needs n >= k + 2, k >= 1, got n={n}, k={k}"));
    }
    let mut g = make_s(n, k)?;
    g.remove_edge(n - 1, k - 1)?;
    Ok(g)
}

/// The partition {clique, independent side} of `S_{n,k}`.
pub fn s_partition(n: usize, k: usize) -> Vec<VertexSet> {
    vec![(0..k).collect(), (k..n).collect()]
}

/// `S_n^k`: star `K_{1,n-1}` plus `k` disjoint edges among the leaves.
pub fn make_star_matching(n: usize, k: usize) -> Result<Graph, GraphError> {
    if n == 0 || 2 * k > n - 1 {
        return param_err(format!("S_n^k needs 2k <= n - 1, got n={n}, k={k}"));
    }
    let mut g = make_star(n - 1)?;
    for i in 0..k {
        g.add_edge(2 * i + 1, 2 * i + 2)?;
    }
    Ok(g)
}

/// `K_{1,r}` with centre `0`.
pub fn make_star(r: usize) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(r + 1)?;
    for leaf in 1..=r {
        g.add_edge(0, leaf)?;
    }
    Ok(g)
}

/// `{centre}, {leaves}` for `K_{1,r}`.
pub fn star_partition(r: usize) -> Vec<VertexSet> {
    vec![VertexSet::singleton(0), (1..=r).collect()]
}

/// Double star `D_{a,b}`: adjacent centres `0` and `1` with `a` and `b` leaves.
pub fn make_double_star(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return param_err(format!("D_{{a,b}} needs a, b >= 1, got a={a}, b={b}"));
    }
    let mut g = Graph::empty(a + b + 2)?;
    g.add_edge(0, 1)?;
    for i in 0..a {
        g.add_edge(0, 2 + i)?;
    }
    for i in 0..b {
        g.add_edge(1, 2 + a + i)?;
    }
    Ok(g)
}

/// `θ(1,p,q)` with anchors `0` and `1`; lengths are taken in either order.
pub fn make_theta(p: usize, q: usize) -> Result<Graph, GraphError> {
    let (p, q) = crate::theta::normalize_lengths(p, q)?;
    let mut g = Graph::empty(p + q)?;
    g.add_edge(0, 1)?;
    let mut next = 2;
    for len in [p, q] {
        let mut prev = 0;
        for _ in 0..len - 1 {
            g.add_edge(prev, next)?;
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1)?;
    }
    Ok(g)
}

/// `K_k ∨ sK_1`.
pub fn make_complete_split(k: usize, s: usize) -> Result<Graph, GraphError> {
    if k == 0 || s == 0 {
        return param_err(format!("K_k ∨ sK_1 needs k, s >= 1, got k={k}, s={s}"));
    }
    make_s(k + s, k)
}

/// Apex joined to a star `K_{1,r}` (centre included) and to `t` pendants.
pub fn make_g4(r: usize, t: usize) -> Result<Graph, GraphError> {
    if r == 0 {
        return param_err("G4 needs r >= 1".into());
    }
    let mut g = Graph::empty(r + t + 2)?;
    g.add_edge(0, 1)?;
    for i in 2..r + 2 {
        g.add_edge(0, i)?;
        g.add_edge(1, i)?;
    }
    for i in r + 2..r + t + 2 {
        g.add_edge(0, i)?;
    }
    Ok(g)
}

/// `{apex}, {centre}, {star leaves}, {pendants}` (last block omitted when `t = 0`).
pub fn g4_partition(r: usize, t: usize) -> Vec<VertexSet> {
    let mut blocks = vec![VertexSet::singleton(0), VertexSet::singleton(1), (2..r + 2).collect()];
    if t > 0 {
        blocks.push((r + 2..r + t + 2).collect());
    }
    blocks
}

/// `f(x,t) = x⁴ − m x² − (m − t − 1) x + t(m − t − 1)/2`.
pub fn f_poly(m: usize, t: usize) -> Result<Polynomial, GraphError> {
    if m < t + 3 || (m - t - 1) % 2 != 0 {
        return param_err(format!("f(x,t) needs m >= t + 3 and m - t - 1 even, got m={m}, t={t}"));
    }
    let (m, t) = (m as i64, t as i64);
    let s = m - t - 1;
    let p = if (t * s) % 2 == 0 {
        Polynomial::from_i64(&[t * s / 2, -s, -m, 0, 1])
    } else {
        Polynomial::from_i64(&[t * s, -2 * s, -2 * m, 0, 2]).doubled()
    };
    Ok(p)
}

/// A named family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum FamilySpec {
    S { n: usize, k: usize },
    SMinus { n: usize, k: usize },
    StarMatching { n: usize, k: usize },
    DoubleStar { a: usize, b: usize },
    Star { r: usize },
    Theta { p: usize, q: usize },
    CompleteSplit { k: usize, s: usize },
    G4 { r: usize, t: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match *self {
            FamilySpec::S { n, k } => make_s(n, k),
            FamilySpec::SMinus { n, k } => make_s_minus(n, k),
            FamilySpec::StarMatching { n, k } => make_star_matching(n, k),
            FamilySpec::DoubleStar { a, b } => make_double_star(a, b),
            FamilySpec::Star { r } => make_star(r),
            FamilySpec::Theta { p, q } => make_theta(p, q),
            FamilySpec::CompleteSplit { k, s } => make_complete_split(k, s),
            FamilySpec::G4 { r, t } => make_g4(r, t),
        }
    }

    /// A natural equitable partition, when the family has one built in.
    pub fn partition(&self) -> Option<Vec<VertexSet>> {
        match *self {
            FamilySpec::S { n, k } => Some(s_partition(n, k)),
            FamilySpec::Star { r } => Some(star_partition(r)),
            FamilySpec::CompleteSplit { k, s } => Some(s_partition(k + s, k)),
            FamilySpec::G4 { r, t } => Some(g4_partition(r, t)),
            FamilySpec::SMinus { n, k: 2 } => Some(g4_partition(n - 3, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::S { n, k } => write!(f, "S,n={n},k={k}"),
            FamilySpec::SMinus { n, k } => write!(f, "S-,n={n},k={k}"),
            FamilySpec::StarMatching { n, k } => write!(f, "Snk,n={n},k={k}"),
            FamilySpec::DoubleStar { a, b } => write!(f, "D,a={a},b={b}"),
            FamilySpec::Star { r } => write!(f, "star,r={r}"),
            FamilySpec::Theta { p, q } => write!(f, "theta,p={p},q={q}"),
            FamilySpec::CompleteSplit { k, s } => write!(f, "Kvs,k={k},s={s}"),
            FamilySpec::G4 { r, t } => write!(f, "G4,r={r},t={t}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = GraphError;

    /// Parses `tag,key=value,...`, e.g. `S-,n=48,k=2` or `G4,r=45,t=1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(',').map(str::trim);
        let tag = parts.next().unwrap_or_default();
        let mut params = std::collections::BTreeMap::new();
        for kv in parts {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| GraphError::Parameter(format!("expected key=value, got `{kv}`")))?;
            let v: usize = v
                .parse()
                .map_err(|_| GraphError::Parameter(format!("`{v}` is not a non-negative integer")))?;
            params.insert(k.to_string(), v);
        }
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| GraphError::Parameter(format!("family `{tag}` needs `{key}=`")))
        };
        let spec = match tag {
            "S" | "S_nk" => FamilySpec::S { n: get("n")?, k: get("k")? },
            "S-" | "S_nk_minus" => FamilySpec::SMinus { n: get("n")?, k: get("k")? },
            "Snk" | "S_n_k_matching" | "star_matching" => FamilySpec::StarMatching { n: get("n")?, k: get("k")? },
            "D" | "double_star" => FamilySpec::DoubleStar { a: get("a")?, b: get("b")? },
            "star" | "K1r" => FamilySpec::Star { r: get("r")? },
            "theta" => FamilySpec::Theta { p: get("p")?, q: get("q")? },
            "Kvs" | "complete_split" => FamilySpec::CompleteSplit { k: get("k")?, s: get("s")? },
            "G4" => FamilySpec::G4 { r: get("r")?, t: get("t")? },
            other => return param_err(format!("unknown family `{other}`")),
        };
        Ok(spec)
    }
}

/// Exact description of a spectral radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RhoForm {
    /// An element of a real quadratic field.
    Quadratic { value: QuadExt },
    /// Largest real root of an integer polynomial.
    LargestRoot { poly: Polynomial, value: f64 },
}

impl RhoForm {
    pub fn to_f64(&self) -> f64 {
        match self {
            RhoForm::Quadratic { value } => value.to_f64(),
            RhoForm::LargestRoot { value, .. } => *value,
        }
    }
}

/// `ρ(S_{n,k})` from its 2×2 quotient `x² − (k−1)x − k(n−k)`.
pub fn rho_s_exact(n: usize, k: usize) -> QuadExt {
    let (n, k) = (n as i64, k as i64);
    monic_quadratic_root(-(k - 1), -k * (n - k)).expect("positive discriminant")
}

/// Closed-form or polynomial-root spectral radius.
pub fn closed_form_rho(spec: &FamilySpec) -> Result<RhoForm, GraphError> {
    let root = |poly: Polynomial| {
        let value = poly
            .largest_real_root(None, None)
            .map_err(|e| GraphError::Parameter(e.to_string()))?;
        Ok(RhoForm::LargestRoot { poly, value })
    };
    match *spec {
        FamilySpec::S { n, k } => {
            make_s(n, k)?;
            Ok(RhoForm::Quadratic { value: rho_s_exact(n, k) })
        }
        FamilySpec::CompleteSplit { k, s } => {
            make_complete_split(k, s)?;
            Ok(RhoForm::Quadratic { value: rho_s_exact(k + s, k) })
        }
        FamilySpec::Star { r } => Ok(RhoForm::Quadratic { value: QuadExt::sqrt(r as u64) }),
        FamilySpec::G4 { r, t } => {
            make_g4(r, t)?;
            root(f_poly(2 * r + t + 1, t)?)
        }
        FamilySpec::SMinus { n, k: 2 } => {
            make_s_minus(n, 2)?;
            root(f_poly(2 * n - 4, 1)?)
        }
        other => param_err(format!("no closed form for {other}")),
    }
}
