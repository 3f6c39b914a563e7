//! Exact arithmetic in real quadratic fields `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::poly::Polynomial;
use crate::error::SpectralError;

/// `a + b√d` with rational `a`, `b` and square-free `d ≥ 1`.
///
/// `d = 1` stands for the rationals themselves; such values always carry
/// `b = 0` and mix freely with any field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Splits `n = s² · d` with `d` square-free.
pub fn square_free_split(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = n;
    let mut p = 2u64;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d)
}

impl QuadExt {
    pub fn rational(a: BigRational) -> Self {
        QuadExt {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_int(a: i64) -> Self {
        QuadExt::rational(BigRational::from_integer(a.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        QuadExt::rational(BigRational::new(num.into(), den.into()))
    }

    /// `a + b√n` for any `n ≥ 0`; square factors of `n` move into `b`.
    pub fn new(a: BigRational, b: BigRational, n: u64) -> Self {
        if n == 0 || b.is_zero() {
            return QuadExt::rational(a);
        }
        let (s, d) = square_free_split(n);
        let b = b * BigRational::from_integer(BigInt::from(s));
        if d == 1 {
            QuadExt::rational(a + b)
        } else {
            QuadExt { a, b, d }
        }
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        QuadExt::new(BigRational::zero(), BigRational::one(), n)
    }

    /// `(p + q√n) / r` with integer data.
    pub fn from_parts(p: i64, q: i64, n: u64, r: i64) -> Self {
        let den = BigInt::from(r);
        QuadExt::new(
            BigRational::new(p.into(), den.clone()),
            BigRational::new(q.into(), den),
            n,
        )
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// Square-free radicand; `1` for rationals.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn field(&self, other: &Self) -> Result<u64, SpectralError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(SpectralError::MixedField(x, y)),
        }
    }

    fn make(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            QuadExt::rational(a)
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SpectralError> {
        let d = self.field(other)?;
        Ok(QuadExt::make(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SpectralError> {
        let d = self.field(other)?;
        Ok(QuadExt::make(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SpectralError> {
        let d = self.field(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt::make(a, b, d))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadExt::make(&self.a * k, &self.b * k, self.d)
    }

    pub fn neg(&self) -> Self {
        QuadExt::make(-self.a.clone(), -self.b.clone(), self.d)
    }

    /// Conjugate `a - b√d`.
    pub fn conj(&self) -> Self {
        QuadExt::make(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² - b²d`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    /// Exact sign.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            // opposite signs: compare a² with b²d
            (x, _) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                match a2.cmp(&b2d) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, SpectralError> {
        Ok(self.sub(other)?.sign())
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

/// Sign of a quadratic-field element.
pub fn quad_sign(q: &QuadExt) -> Ordering {
    q.sign()
}

/// Evaluates `p` at `x` exactly (Horner's rule in `Q(√d)`).
pub fn eval_poly_quad(p: &Polynomial, x: &QuadExt) -> Result<QuadExt, SpectralError> {
    let mut acc = QuadExt::from_int(0);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x)?.add(&QuadExt::rational(BigRational::from_integer(c.clone())))?;
    }
    if p.is_doubled() {
        acc = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
    }
    Ok(acc)
}

/// Larger root `(-b + √(b² - 4c)) / 2` of the monic quadratic `x² + bx + c`,
/// or `None` if the discriminant is negative.
pub fn monic_quadratic_root(b: i64, c: i64) -> Option<QuadExt> {
    let disc = i128::from(b) * i128::from(b) - 4 * i128::from(c);
    if disc < 0 {
        return None;
    }
    let disc = u64::try_from(disc).ok()?;
    Some(QuadExt::new(
        BigRational::new((-b).into(), 2.into()),
        BigRational::new(1.into(), 2.into()),
        disc,
    ))
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sep = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt({})", self.a, sep, self.b.abs(), self.d)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadExt", 4)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_examples() {
        assert_eq!(QuadExt::from_parts(1, -1, 2, 1).sign(), Ordering::Less);
        assert_eq!(QuadExt::from_parts(-1, 1, 2, 1).sign(), Ordering::Greater);
        assert_eq!(QuadExt::from_parts(3, -1, 9, 1).sign(), Ordering::Equal);
        assert_eq!(QuadExt::from_parts(0, 0, 5, 1).sign(), Ordering::Equal);
    }

    #[test]
    fn perfect_square_normalizes() {
        let x = QuadExt::from_parts(1, 1, 169, 2);
        assert!(x.is_rational());
        assert_eq!(x, QuadExt::from_int(7));
        let p = Polynomial::from_i64(&[-42, -1, 1]);
        assert!(eval_poly_quad(&p, &x).unwrap().is_zero());
    }

    #[test]
    fn square_factors_are_extracted() {
        let x = QuadExt::sqrt(363);
        assert_eq!(x.d(), 3);
        assert_eq!(x.b(), &BigRational::from_integer(11.into()));
        assert_eq!(square_free_split(4 * 9 * 7), (6, 7));
    }

    #[test]
    fn f92_at_lemma_bound_is_negative() {
        let f = Polynomial::from_i64(&[45, -90, -92, 0, 1]);
        let x = QuadExt::from_parts(1, 1, 363, 2);
        let v = eval_poly_quad(&f, &x).unwrap();
        assert_eq!(v.sign(), Ordering::Less);
        assert_eq!(v, QuadExt::from_ratio(-1, 4));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = QuadExt::sqrt(2);
        let b = QuadExt::sqrt(3);
        assert_eq!(a.add(&b), Err(SpectralError::MixedField(2, 3)));
        assert!(a.add(&QuadExt::from_int(1)).is_ok());
    }

    #[test]
    fn ring_identities() {
        let x = QuadExt::from_parts(2, 3, 7, 5);
        let prod = x.mul(&x.conj()).unwrap();
        assert!(prod.is_rational());
        assert_eq!(prod.a(), &x.norm());
        assert_eq!(x.sub(&x).unwrap().sign(), Ordering::Equal);
    }

    #[test]
    fn quadratic_root() {
        // x^2 - x - 42
        assert_eq!(monic_quadratic_root(-1, -42).unwrap(), QuadExt::from_int(7));
        let r = monic_quadratic_root(-2, -6).unwrap(); // 1 + sqrt(7)
        assert_eq!(r, QuadExt::from_parts(1, 1, 7, 1));
        assert!(monic_quadratic_root(0, 1).is_none());
    }
}
