//! Characteristic polynomials, equitable partitions and quotient matrices.

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::power::{spectral_radius, DEFAULT_TOL};
use crate::error::SpectralError;
use crate::graph::{Graph, VertexSet};

/// Largest matrix order accepted by [`char_poly`].
pub const CHAR_POLY_CAP: usize = 64;

/// Agreement required between the quotient's largest root and `ρ(G)`.
pub const QUOTIENT_ROOT_TOL: f64 = 1e-9;

/// Exact characteristic polynomial `det(xI − M)` of an integer matrix.
///
/// Faddeev–LeVerrier; runs in checked `i128` and redoes the computation in
/// big integers if anything overflows.
pub fn char_poly(m: &[Vec<i64>]) -> Result<Polynomial, SpectralError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(SpectralError::NotSquare);
    }
    if n > CHAR_POLY_CAP {
        return Err(SpectralError::TooLarge(n));
    }
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if let Some(c) = faddeev_leverrier(&small) {
        return Ok(Polynomial::new(c.into_iter().map(BigInt::from).collect()));
    }
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let c = faddeev_leverrier(&big).expect("big integers do not overflow");
    Ok(Polynomial::new(c))
}

fn faddeev_leverrier<T>(a: &[Vec<T>]) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv + TryFrom<usize>,
{
    let n = a.len();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    for k in 1..=n {
        let mut am = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a[i][l].checked_mul(&m[l][j])?;
                    am[i][j] = am[i][j].checked_add(&t)?;
                }
            }
        }
        let mut trace = T::zero();
        for (i, row) in am.iter().enumerate() {
            trace = trace.checked_add(&row[i])?;
        }
        let kk = T::try_from(k).ok()?;
        let c = T::zero().checked_sub(&trace)?.checked_div(&kk)?;
        for (i, row) in am.iter_mut().enumerate() {
            row[i] = row[i].checked_add(&c)?;
        }
        coeffs[n - k] = c;
        m = am;
    }
    Some(coeffs)
}

/// Quotient matrix of an equitable partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    /// `entries[i][j]`: neighbours in block `j` of any vertex of block `i`.
    pub entries: Vec<Vec<i64>>,
    pub partition: Vec<VertexSet>,
}

impl QuotientMatrix {
    pub fn blocks(&self) -> usize {
        self.entries.len()
    }

    pub fn char_poly(&self) -> Polynomial {
        char_poly(&self.entries).expect("quotient is square and small")
    }
}

/// Two vertices of one block that see a different number of neighbours in
/// another block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquitableWitness {
    pub block_i: usize,
    pub block_j: usize,
    pub u: usize,
    pub v: usize,
    pub count_u: usize,
    pub count_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equitability {
    Equitable(QuotientMatrix),
    NotEquitable(EquitableWitness),
}

impl Equitability {
    pub fn quotient(self) -> Option<QuotientMatrix> {
        match self {
            Equitability::Equitable(q) => Some(q),
            Equitability::NotEquitable(_) => None,
        }
    }
}

fn check_partition(g: &Graph, partition: &[VertexSet]) -> Result<(), SpectralError> {
    let mut seen = VertexSet::new();
    for (i, block) in partition.iter().enumerate() {
        if block.is_empty() {
            return Err(SpectralError::InvalidPartition(format!("block {i} is empty")));
        }
        if !seen.is_disjoint(block) {
            return Err(SpectralError::InvalidPartition(format!("block {i} overlaps an earlier block")));
        }
        seen = seen.union(block);
    }
    if seen != g.vertices() {
        return Err(SpectralError::InvalidPartition("blocks do not cover V(G)".into()));
    }
    Ok(())
}

/// Checks the partition and returns the quotient matrix or a witness.
pub fn is_equitable(g: &Graph, partition: &[VertexSet]) -> Result<Equitability, SpectralError> {
    check_partition(g, partition)?;
    let k = partition.len();
    let mut entries = vec![vec![0i64; k]; k];
    for (i, block) in partition.iter().enumerate() {
        let rep = block.first().expect("non-empty block");
        for (j, other) in partition.iter().enumerate() {
            let want = g.degree_in(rep, other);
            if let Some(v) = block.iter().find(|&v| g.degree_in(v, other) != want) {
                return Ok(Equitability::NotEquitable(EquitableWitness {
                    block_i: i,
                    block_j: j,
                    u: rep,
                    v,
                    count_u: want,
                    count_v: g.degree_in(v, other),
                }));
            }
            entries[i][j] = want as i64;
        }
    }
    Ok(Equitability::Equitable(QuotientMatrix {
        entries,
        partition: partition.to_vec(),
    }))
}

/// Outcome of the divisibility check for one equitable partition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub quotient: QuotientMatrix,
    pub quotient_poly: Polynomial,
    pub graph_poly: Polynomial,
    pub divides: bool,
    pub quotient_root: f64,
    pub rho: f64,
    pub root_matches: bool,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.divides && self.root_matches
    }
}

pub fn quotient_report(g: &Graph, partition: &[VertexSet]) -> Result<QuotientReport, SpectralError> {
    let quotient = is_equitable(g, partition)?
        .quotient()
        .ok_or(SpectralError::NotEquitable)?;
    let quotient_poly = quotient.char_poly();
    let graph_poly = char_poly(&g.adjacency_matrix())?;
    let divides = quotient_poly.divides(&graph_poly);
    let quotient_root = quotient_poly.largest_real_root(None, None)?;
    let rho = spectral_radius(g, DEFAULT_TOL)?.rho;
    Ok(QuotientReport {
        root_matches: (quotient_root - rho).abs() <= QUOTIENT_ROOT_TOL,
        quotient,
        quotient_poly,
        graph_poly,
        divides,
        quotient_root,
        rho,
    })
}

/// Whether `det(xI − B)` divides `det(xI − A)` exactly and the largest root of
/// `B` matches `ρ(G)`.
pub fn verify_quotient_divides(g: &Graph, partition: &[VertexSet]) -> Result<bool, SpectralError> {
    quotient_report(g, partition).map(|r| r.passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn identity_char_poly() {
        let p = char_poly(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(p, Polynomial::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn s_n2_quotient_poly() {
        for n in 3..12i64 {
            let p = char_poly(&[vec![1, n - 2], vec![2, 0]]).unwrap();
            assert_eq!(p, Polynomial::from_i64(&[-2 * (n - 2), -1, 1]));
        }
    }

    #[test]
    fn g4_quotient_poly() {
        // blocks {u*}, {u0}, {u1..ur}, N0 with r = 45, t = 1
        let q = vec![vec![0, 1, 45, 1], vec![1, 0, 45, 0], vec![1, 1, 0, 0], vec![1, 0, 0, 0]];
        assert_eq!(char_poly(&q).unwrap(), Polynomial::from_i64(&[45, -90, -92, 0, 1]));
    }

    #[test]
    fn adjacency_char_polys() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(char_poly(&c4.adjacency_matrix()).unwrap(), Polynomial::from_i64(&[0, 0, -4, 0, 1]));
        let star = Graph::complete_bipartite(1, 4).unwrap();
        assert_eq!(
            char_poly(&star.adjacency_matrix()).unwrap(),
            Polynomial::from_i64(&[0, 0, 0, -4, 0, 1])
        );
    }

    #[test]
    fn big_integer_fallback() {
        // K_40 overflows nothing, but a matrix with large entries does
        let n = 12;
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { 1_000_000_000 }).collect()).collect();
        let p = char_poly(&m).unwrap();
        // eigenvalues of c(J - I): c(n-1) once, -c with multiplicity n-1
        let c = 1_000_000_000i64;
        let expected = Polynomial::linear(c * (n as i64 - 1));
        let mut e = expected;
        for _ in 0..n - 1 {
            e = e.mul(&Polynomial::linear(-c));
        }
        assert_eq!(p, e);
    }

    #[test]
    fn star_partition() {
        let star = Graph::complete_bipartite(1, 4).unwrap();
        let part = [set(&[0]), set(&[1, 2, 3, 4])];
        let q = is_equitable(&star, &part).unwrap().quotient().unwrap();
        assert_eq!(q.entries, vec![vec![0, 4], vec![1, 0]]);
        assert!(verify_quotient_divides(&star, &part).unwrap());
    }

    #[test]
    fn s_n2_partition() {
        let g = families::make_s(9, 2).unwrap();
        let part = [set(&[0, 1]), set(&[2, 3, 4, 5, 6, 7, 8])];
        let q = is_equitable(&g, &part).unwrap().quotient().unwrap();
        assert_eq!(q.entries, vec![vec![1, 7], vec![2, 0]]);
    }

    #[test]
    fn paths() {
        let p3 = Graph::path(3).unwrap();
        let q = is_equitable(&p3, &[set(&[0, 2]), set(&[1])]).unwrap().quotient().unwrap();
        assert_eq!(q.entries, vec![vec![0, 1], vec![2, 0]]);

        let p4 = Graph::path(4).unwrap();
        assert!(is_equitable(&p4, &[set(&[0, 3]), set(&[1, 2])]).unwrap().quotient().is_some());
        match is_equitable(&p4, &[set(&[0, 1]), set(&[2, 3])]).unwrap() {
            Equitability::NotEquitable(w) => {
                assert_eq!((w.block_i, w.u, w.v), (0, 0, 1));
                assert_ne!(w.count_u, w.count_v);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn invalid_partitions() {
        let p4 = Graph::path(4).unwrap();
        assert!(matches!(is_equitable(&p4, &[set(&[0, 1]), set(&[1, 2, 3])]), Err(SpectralError::InvalidPartition(_))));
        assert!(matches!(is_equitable(&p4, &[set(&[0, 1])]), Err(SpectralError::InvalidPartition(_))));
        assert!(matches!(
            verify_quotient_divides(&p4, &[set(&[0, 1]), set(&[2, 3])]),
            Err(SpectralError::NotEquitable)
        ));
    }

    #[test]
    fn regular_one_block() {
        let c4 = Graph::cycle(4).unwrap();
        let r = quotient_report(&c4, &[set(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(r.quotient.entries, vec![vec![2]]);
        assert!(r.passed());
    }

    #[test]
    fn g4_divides() {
        let g = families::make_g4(3, 1).unwrap();
        let r = quotient_report(&g, &families::g4_partition(3, 1)).unwrap();
        assert_eq!(r.graph_poly.degree(), Some(6));
        assert!(r.passed());
    }
}
