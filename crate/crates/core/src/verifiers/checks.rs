//! Gated inequality checks.
//!
//! A check first evaluates its hypotheses. If any fails, `holds` stays `None`
//! and both sides are still reported where they make sense.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use super::decompose::{decompose_at, DecompositionReport};
use crate::error::{GraphError, SpectralError};
use crate::families::{f_poly, g4_partition, make_complete_split, make_s, make_s_minus, s_partition};
use crate::graph::{Bipartition, Graph, VertexSet};
use crate::spectral::{
    char_poly, eval_poly_quad, is_equitable, monic_quadratic_root, perron_vector, rho, Polynomial, QuadExt,
};
use crate::theta::is_theta133_free;

/// Slack for float comparisons of the two sides.
pub const FLOAT_MARGIN: f64 = 1e-9;
/// Required gap for a strict increase under rotation.
pub const ROTATION_MARGIN: f64 = 1e-10;
/// Tolerance of the eigen-equation expansion.
pub const IDENTITY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

fn hyp(name: &str, holds: bool) -> Hypothesis {
    Hypothesis {
        name: name.to_string(),
        holds,
    }
}

/// One side of an inequality.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Float(f64),
    Exact(QuadExt),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Float(x) => *x,
            Value::Exact(q) => q.to_f64(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Float(x) => s.serialize_f64(*x),
            Value::Exact(q) => q.serialize(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    /// `lhs < rhs` when set, else `lhs ≤ rhs`.
    pub strict: bool,
    /// `None` when a hypothesis failed.
    pub holds: Option<bool>,
    /// `rhs − lhs`.
    pub margin: Option<f64>,
    pub exact: bool,
    /// Further consequences or side facts, such as an equality case.
    pub derived: Vec<Hypothesis>,
}

impl InequalityCheck {
    fn new(name: &str, strict: bool) -> Self {
        InequalityCheck {
            name: name.to_string(),
            hypotheses: Vec::new(),
            lhs: None,
            rhs: None,
            strict,
            holds: None,
            margin: None,
            exact: false,
            derived: Vec::new(),
        }
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    /// True only when the verdict exists and is negative.
    pub fn failed(&self) -> bool {
        self.holds == Some(false) || self.derived.iter().any(|d| !d.holds)
    }

    /// Sets both sides and, when all hypotheses hold, the verdict.
    fn decide_float(&mut self, lhs: f64, rhs: f64, eps: f64) {
        self.lhs = Some(Value::Float(lhs));
        self.rhs = Some(Value::Float(rhs));
        self.margin = Some(rhs - lhs);
        if self.hypotheses_met() {
            self.holds = Some(if self.strict { rhs - lhs > eps } else { lhs <= rhs + eps });
        }
    }

    fn decide_exact(&mut self, lhs: QuadExt, rhs: QuadExt) -> Result<(), SpectralError> {
        let ord = lhs.cmp_exact(&rhs)?;
        self.margin = Some(rhs.to_f64() - lhs.to_f64());
        self.lhs = Some(Value::Exact(lhs));
        self.rhs = Some(Value::Exact(rhs));
        self.exact = true;
        if self.hypotheses_met() {
            self.holds = Some(if self.strict { ord == Ordering::Less } else { ord != Ordering::Greater });
        }
        Ok(())
    }
}

/// `(1 + √(4m − 5)) / 2`.
pub fn s_minus_threshold(m: usize) -> QuadExt {
    QuadExt::from_parts(1, 1, 4 * m as u64 - 5, 2)
}

/// Result of moving `v`'s private neighbours over to `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    pub graph: Graph,
    pub moved: Vec<usize>,
}

impl Rotation {
    pub fn is_noop(&self) -> bool {
        self.moved.is_empty()
    }
}

/// `G − Σ v_i v + Σ v_i u` over all `v_i ∈ N(v) \ N[u]`.
pub fn edge_rotation(g: &Graph, u: usize, v: usize) -> Result<Rotation, GraphError> {
    let n = g.order();
    for x in [u, v] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Err(GraphError::Parameter("rotation needs two distinct vertices".into()));
    }
    let moved = g.neighborhood(v).difference(&g.closed_neighborhood(u)).to_vec();
    let mut graph = g.clone();
    for &w in &moved {
        graph.remove_edge(w, v)?;
        graph.add_edge(w, u)?;
    }
    Ok(Rotation { graph, moved })
}

/// Rotation towards the larger Perron coordinate strictly increases ρ.
pub fn check_lemma21(g: &Graph, u: usize, v: usize) -> Result<InequalityCheck, SpectralError> {
    let mut check = InequalityCheck::new("lemma-2.1", true);
    let connected = g.is_connected();
    check.hypotheses.push(hyp("G connected", connected));
    let rotation = edge_rotation(g, u, v)?;
    check.hypotheses.push(hyp("rotation set non-empty", !rotation.is_noop()));
    let before = if connected {
        let cert = perron_vector(g)?;
        let slack = FLOAT_MARGIN * cert.perron[u].max(cert.perron[v]);
        check.hypotheses.push(hyp("x_u >= x_v", cert.perron[u] + slack >= cert.perron[v]));
        cert.rho
    } else {
        check.hypotheses.push(hyp("x_u >= x_v", false));
        rho(g)
    };
    check.decide_float(before, rho(&rotation.graph), ROTATION_MARGIN);
    Ok(check)
}

/// `ρ ≤ √m` for bipartite graphs, with the equality case recognised structurally.
pub fn check_lemma25(g: &Graph) -> Result<InequalityCheck, SpectralError> {
    if let Bipartition::OddCycle(_) = g.bipartition() {
        return Err(GraphError::Parameter("graph is not bipartite".into()).into());
    }
    let mut check = InequalityCheck::new("lemma-2.5", false);
    check.hypotheses.push(hyp("G bipartite", true));
    let m = g.size();
    let r = if m == 0 { 0.0 } else { rho(g) };
    check.decide_float(r, (m as f64).sqrt(), FLOAT_MARGIN);
    let core = g.without_isolated();
    let structural = m > 0
        && core.is_connected()
        && match core.bipartition() {
            Bipartition::Parts(a, b) => a.len() * b.len() == m,
            Bipartition::OddCycle(_) => false,
        };
    let numeric = ((m as f64).sqrt() - r).abs() < FLOAT_MARGIN;
    check.derived.push(hyp("equality iff complete bipartite plus isolated vertices", structural == numeric));
    check.derived.push(hyp("equality case", structural));
    Ok(check)
}

/// Exact check that `ρ(S⁻_{(m+4)/2,2})` exceeds `(1 + √(4m − 5)) / 2`.
///
/// The quartic `f(x, 1)` has `ρ` as its largest root and positive leading
/// coefficient, so a negative value at the threshold puts `ρ` above it.
pub fn check_lemma26(m: usize) -> Result<InequalityCheck, SpectralError> {
    if m < 6 || m % 2 != 0 {
        return Err(GraphError::Parameter(format!("needs even m >= 6, got {m}")).into());
    }
    let mut check = InequalityCheck::new("lemma-2.6", true);
    check.hypotheses.push(hyp("m even, m >= 6", true));
    let f = f_poly(m, 1)?;
    let bound = s_minus_threshold(m);
    let value = eval_poly_quad(&f, &bound)?;
    let root = f.largest_real_root(None, None)?;
    check.lhs = Some(Value::Exact(bound.clone()));
    check.rhs = Some(Value::Float(root));
    check.margin = Some(root - bound.to_f64());
    check.exact = true;
    check.holds = Some(value.sign() == Ordering::Less);
    check.derived.push(hyp("float cross-check agrees", (root > bound.to_f64()) == (value.sign() == Ordering::Less)));
    Ok(check)
}

fn rho_above_threshold(r: f64, m: usize) -> bool {
    m >= 2 && r - s_minus_threshold(m).to_f64() > FLOAT_MARGIN
}

/// Edge bound on `W` given a vertex `v ∈ N²(u*)` with `x_v < (1 − β) x_{u*}`.
pub fn check_lemma27(g: &Graph, v: usize, beta: f64) -> Result<InequalityCheck, SpectralError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(GraphError::Parameter(format!("beta must lie in (0, 1), got {beta}")).into());
    }
    if v >= g.order() {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() }.into());
    }
    let mut check = InequalityCheck::new("lemma-2.7", true);
    let connected = g.is_connected();
    check.hypotheses.push(hyp("G connected", connected));
    if !connected {
        return Ok(check);
    }
    let d = decompose_at(g, None)?;
    let m = g.size();
    check.hypotheses.push(hyp("rho > (1+sqrt(4m-5))/2", rho_above_threshold(d.certificate.rho, m)));
    check.hypotheses.push(hyp("v in N2(u*)", d.n2.contains(v)));
    check.hypotheses.push(hyp("x_v < (1-beta) x_u*", d.x(v) < (1.0 - beta) * d.x_apex()));
    let nbhd = d.n0.union(&d.nplus);
    let rhs = d.e_n as f64 - d.nplus.len() as f64 + 1.5 - beta * g.degree_in(v, &nbhd) as f64;
    check.decide_float(d.e_w as f64, rhs, FLOAT_MARGIN);
    Ok(check)
}

/// Default `β` for a given vertex: halfway between `x_v / x_{u*}` and 1.
pub fn default_beta(g: &Graph, v: usize) -> Result<f64, SpectralError> {
    let cert = perron_vector(g)?;
    let ratio = cert.perron[v] / cert.perron[cert.argmax()];
    Ok((1.0 - ratio) / 2.0)
}

/// `e(W) < 3/2 − c − Σ_{u ∈ N₀} x_u / x_{u*}` with corollaries `e(W) ≤ 1`, `c ≤ 1`.
pub fn check_eq4(g: &Graph) -> Result<InequalityCheck, SpectralError> {
    let mut check = InequalityCheck::new("eq-4", true);
    let connected = g.is_connected();
    check.hypotheses.push(hyp("G connected", connected));
    if !connected {
        return Ok(check);
    }
    check.hypotheses.push(hyp("G theta(1,3,3)-free", is_theta133_free(g)));
    let d = decompose_at(g, None)?;
    check.hypotheses.push(hyp("rho > (1+sqrt(4m-5))/2", rho_above_threshold(d.certificate.rho, g.size())));
    let rhs = 1.5 - d.c as f64 - d.n0_ratio();
    check.decide_float(d.e_w as f64, rhs, FLOAT_MARGIN);
    if check.holds.is_some() {
        check.derived.push(hyp("e(W) <= 1", d.e_w <= 1));
        check.derived.push(hyp("c <= 1", d.c <= 1));
    }
    Ok(check)
}

/// Both sides of the expansion of `(ρ² − ρ) x_{u*}` through the neighbourhood layers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub apex: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tol: f64,
    pub holds: bool,
}

pub fn eq1_identity(g: &Graph, apex: Option<usize>) -> Result<IdentityCheck, SpectralError> {
    let d = decompose_at(g, apex)?;
    let r = d.certificate.rho;
    let nbhd = d.n0.union(&d.nplus);
    let x = |v: usize| d.x(v);
    let lhs = (r * r - r) * d.x_apex();
    let rhs = g.degree(d.apex) as f64 * d.x_apex()
        + d.nplus.iter().map(|v| (g.degree_in(v, &nbhd) as f64 - 1.0) * x(v)).sum::<f64>()
        + d.n2.iter().map(|w| g.degree_in(w, &nbhd) as f64 * x(w)).sum::<f64>()
        - d.n0.iter().map(x).sum::<f64>();
    let residual = (lhs - rhs).abs();
    Ok(IdentityCheck {
        name: "eq-1".into(),
        apex: d.apex,
        lhs,
        rhs,
        residual,
        tol: IDENTITY_TOL,
        holds: residual <= IDENTITY_TOL * lhs.abs().max(1.0),
    })
}

/// `Σ_H ζ(H)` against the direct sum over `N₊`; returns the absolute difference.
pub fn zeta_additivity_gap(d: &DecompositionReport, g: &Graph) -> f64 {
    let nbhd = d.n0.union(&d.nplus);
    let direct: f64 = d.nplus.iter().map(|u| (g.degree_in(u, &nbhd) as f64 - 1.0) * d.x(u)).sum();
    (direct - d.zeta_total()).abs()
}

/// Which equality case to certify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TheoremCase {
    /// `K_k ∨ sK_1` against `(k − 1 + √(4m − k² + 1)) / 2`.
    CompleteSplit { k: usize, s: usize },
    /// `S_{(m+3)/2,2}` against `(1 + √(4m − 3)) / 2`, `m` odd.
    SplitOdd { m: usize },
    /// `S⁻_{(m+4)/2,2}` against the largest root of `f(x, 1)`, `m` even.
    SMinusEven { m: usize },
}

/// Larger root of a monic quadratic with integer coefficients.
fn quadratic_root(p: &Polynomial) -> Result<QuadExt, SpectralError> {
    let c = p.coeffs();
    let int = |x: &BigInt| i64::try_from(x).map_err(|_| SpectralError::TooLarge(0));
    if p.degree() != Some(2) || c[2] != BigInt::from(1) || p.is_doubled() {
        return Err(SpectralError::InvalidPartition("quotient is not a monic quadratic".into()));
    }
    monic_quadratic_root(int(&c[1])?, int(&c[0])?).ok_or(SpectralError::NoRoot)
}

fn quotient_poly(g: &Graph, partition: &[VertexSet]) -> Result<Polynomial, SpectralError> {
    Ok(is_equitable(g, partition)?
        .quotient()
        .ok_or(SpectralError::NotEquitable)?
        .char_poly())
}

/// Exact equality cases: the quotient root equals the closed-form bound.
pub fn check_theorem_values(case: TheoremCase) -> Result<InequalityCheck, SpectralError> {
    match case {
        TheoremCase::CompleteSplit { k, s } => {
            let g = make_complete_split(k, s)?;
            let m = k * (k - 1) / 2 + k * s;
            let bound = QuadExt::new(
                BigRational::new(BigInt::from(k as i64 - 1), BigInt::from(2)),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                (4 * m + 1 - k * k) as u64,
            );
            equality_check("theorem-1.1", &g, &s_partition(k + s, k), bound)
        }
        TheoremCase::SplitOdd { m } => {
            if m < 3 || m % 2 == 0 {
                return Err(GraphError::Parameter(format!("needs odd m >= 3, got {m}")).into());
            }
            let n = (m + 3) / 2;
            let g = make_s(n, 2)?;
            equality_check("theorem-1.3", &g, &s_partition(n, 2), QuadExt::from_parts(1, 1, 4 * m as u64 - 3, 2))
        }
        TheoremCase::SMinusEven { m } => {
            if m < 6 || m % 2 != 0 {
                return Err(GraphError::Parameter(format!("needs even m >= 6, got {m}")).into());
            }
            let n = (m + 4) / 2;
            let g = make_s_minus(n, 2)?;
            let mut check = InequalityCheck::new("theorem-1.4", false);
            let qp = quotient_poly(&g, &g4_partition(n - 3, 1))?;
            let f = f_poly(m, 1)?;
            check.hypotheses.push(hyp("m even, m >= 6", true));
            check.derived.push(hyp("quotient polynomial equals f(x,1)", qp == f));
            if n <= crate::spectral::CHAR_POLY_CAP {
                let graph_poly = char_poly(&g.adjacency_matrix())?;
                check.derived.push(hyp("f(x,1) divides char poly of A", f.divides(&graph_poly)));
            }
            let root = f.largest_real_root(None, None)?;
            check.decide_float(rho(&g), root, FLOAT_MARGIN);
            check.holds = Some((root - rho(&g)).abs() <= FLOAT_MARGIN);
            Ok(check)
        }
    }
}

fn equality_check(name: &str, g: &Graph, partition: &[VertexSet], bound: QuadExt) -> Result<InequalityCheck, SpectralError> {
    let mut check = InequalityCheck::new(name, false);
    check.hypotheses.push(hyp("parameters in range", true));
    let root = quadratic_root(&quotient_poly(g, partition)?)?;
    let numeric = rho(g);
    check.derived.push(hyp("power iteration agrees", (numeric - root.to_f64()).abs() <= FLOAT_MARGIN));
    let equal = root == bound;
    check.decide_exact(root, bound)?;
    check.derived.push(hyp("exact equality", equal));
    Ok(check)
}
