//! Exact integer polynomials and certified real-root isolation.

use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SpectralError;

/// Integer polynomial, coefficients in ascending degree.
///
/// When `doubled` is set the stored coefficients are twice those of the
/// polynomial being represented. Roots and divisibility do not see the flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "bigint_vec")]
    coeffs: Vec<BigInt>,
    #[serde(default)]
    doubled: bool,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial {
            coeffs,
            doubled: false,
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::new(Vec::new())
    }

    /// `x - root`.
    pub fn linear(root: i64) -> Self {
        Polynomial::from_i64(&[-root, 1])
    }

    /// Marks the stored coefficients as twice the true ones.
    pub fn doubled(mut self) -> Self {
        self.doubled = true;
        self
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` of the represented polynomial, as a rational.
    pub fn coeff(&self, i: usize) -> BigRational {
        let c = self.coeffs.get(i).cloned().unwrap_or_default();
        if self.doubled {
            BigRational::new(c, BigInt::from(2))
        } else {
            BigRational::from_integer(c)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Stored coefficients with the scaling flag removed (doubling `other`
    /// when only one side is scaled).
    fn aligned(&self, other: &Self) -> (Vec<BigInt>, Vec<BigInt>, bool) {
        let two = BigInt::from(2);
        match (self.doubled, other.doubled) {
            (a, b) if a == b => (self.coeffs.clone(), other.coeffs.clone(), a),
            (true, false) => (
                self.coeffs.clone(),
                other.coeffs.iter().map(|c| c * &two).collect(),
                true,
            ),
            _ => (
                self.coeffs.iter().map(|c| c * &two).collect(),
                other.coeffs.clone(),
                true,
            ),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = Polynomial::new(out);
        match (self.doubled, other.doubled) {
            (false, false) => {}
            (true, true) => {
                // 2a * 2b = 2 * (2ab)
                p.coeffs.iter_mut().for_each(|c| *c *= 2);
                p.doubled = true;
                p = p.normalized();
            }
            _ => p.doubled = true,
        }
        p
    }

    /// Drops the scaling flag when every stored coefficient is even.
    pub fn normalized(mut self) -> Self {
        if self.doubled && self.coeffs.iter().all(|c| (c % 2u32).is_zero()) {
            self.coeffs.iter_mut().for_each(|c| *c /= 2);
            self.doubled = false;
        }
        self
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        Polynomial {
            coeffs,
            doubled: self.doubled,
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let scale = if self.doubled { 0.5 } else { 1.0 };
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
            * scale
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let v = eval_rat(&self.to_rational(), x);
        if self.doubled {
            v / BigInt::from(2)
        } else {
            v
        }
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Whether `self` divides `other` exactly over the rationals.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let (_, r) = rat_div_rem(&other.to_rational(), &self.to_rational());
        r.is_empty()
    }

    /// Quotient and remainder of `self / divisor` over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Vec<BigRational>, Vec<BigRational>), SpectralError> {
        if divisor.is_zero() {
            return Err(SpectralError::NoRoot);
        }
        let scale = |p: &Self| {
            let mut v = p.to_rational();
            if p.doubled {
                v.iter_mut().for_each(|c| *c /= BigInt::from(2));
            }
            v
        };
        Ok(rat_div_rem(&scale(self), &scale(divisor)))
    }

    /// True when every coefficient is strictly positive.
    pub fn has_positive_coefficients(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(Signed::is_positive)
    }

    /// Cauchy bound: every complex root has modulus below it.
    pub fn cauchy_bound(&self) -> Option<BigRational> {
        let lead = BigRational::from_integer(self.coeffs.last()?.clone());
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (BigRational::from_integer(c.clone()) / &lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        Some(max + BigRational::one())
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: f64, hi: f64) -> Result<usize, SpectralError> {
        let chain = SturmChain::new(self).ok_or(SpectralError::NoRoot)?;
        Ok(chain.count(&rat(lo)?, &rat(hi)?))
    }

    /// Largest real root, to within a few ulps.
    ///
    /// With no bounds the search covers the Cauchy bound. Root counting uses
    /// an exact Sturm chain of the square-free part, bisection narrows to an
    /// isolating interval and safeguarded Newton steps finish the job.
    pub fn largest_real_root(&self, lo: Option<f64>, hi: Option<f64>) -> Result<f64, SpectralError> {
        let chain = SturmChain::new(self).ok_or(SpectralError::NoRoot)?;
        let bound = self
            .cauchy_bound()
            .and_then(|b| b.to_f64())
            .ok_or(SpectralError::NoRoot)?;
        let mut a = lo.unwrap_or(-bound.ceil() - 1.0);
        let mut b = hi.unwrap_or(bound.ceil() + 1.0);
        if !(a < b) {
            return Err(SpectralError::NoRoot);
        }
        let vb = chain.variations(&rat(b)?);
        let mut va = chain.variations(&rat(a)?);
        if va == vb {
            return Err(SpectralError::NoRoot);
        }
        // invariant: at least one root in (a, b], none in (b, hi]
        while va - vb > 1 || b - a > 1e-6 * b.abs().max(1.0) {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                return Ok(b);
            }
            let rm = rat(mid)?;
            let vm = chain.variations(&rm);
            if vm > vb {
                a = mid;
                va = vm;
            } else {
                b = mid;
            }
        }
        Ok(chain.polish(a, b))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (a, b, doubled) = self.aligned(rhs);
        let n = a.len().max(b.len());
        let coeffs = (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect();
        Polynomial {
            coeffs,
            doubled,
        }
        .trimmed()
        .normalized()
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let (a, b, doubled) = self.aligned(rhs);
        let n = a.len().max(b.len());
        let coeffs = (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect();
        Polynomial {
            coeffs,
            doubled,
        }
        .trimmed()
        .normalized()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled {
            f.write_str("(1/2)(")?;
        }
        if self.is_zero() {
            f.write_str("0")?;
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show = !mag.is_one() || i == 0;
            if show {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if self.doubled {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn rat(x: f64) -> Result<BigRational, SpectralError> {
    BigRational::from_float(x).ok_or(SpectralError::NoRoot)
}

fn trim_rat(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn eval_rat(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn rat_div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = num.to_vec();
    trim_rat(&mut r);
    let mut d = den.to_vec();
    trim_rat(&mut d);
    assert!(!d.is_empty(), "division by zero polynomial");
    if r.len() < d.len() {
        return (Vec::new(), r);
    }
    let lead = d.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - d.len() + 1];
    while r.len() >= d.len() && !r.is_empty() {
        let shift = r.len() - d.len();
        let factor = r.last().unwrap() / &lead;
        for (i, c) in d.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        q[shift] = factor;
        r.pop();
        trim_rat(&mut r);
    }
    trim_rat(&mut q);
    (q, r)
}

fn rat_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Scales by a positive constant so the leading coefficient is ±1.
fn unit_lead(mut p: Vec<BigRational>) -> Vec<BigRational> {
    if let Some(l) = p.last().map(|l| l.abs()) {
        p.iter_mut().for_each(|c| *c /= &l);
    }
    p
}

fn rat_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_rat(&mut x);
    trim_rat(&mut y);
    while !y.is_empty() {
        let (_, r) = rat_div_rem(&x, &y);
        x = y;
        y = unit_lead(r);
    }
    unit_lead(x)
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain of the square-free part of a polynomial.
struct SturmChain {
    chain: Vec<Vec<BigRational>>,
}

impl SturmChain {
    fn new(p: &Polynomial) -> Option<Self> {
        if p.degree()? == 0 {
            return None;
        }
        let p0 = p.to_rational();
        let g = rat_gcd(&p0, &rat_derivative(&p0));
        let (sq, _) = rat_div_rem(&p0, &g);
        let sq = unit_lead(sq);
        let mut chain = vec![sq.clone(), unit_lead(rat_derivative(&sq))];
        loop {
            let n = chain.len();
            let (_, r) = rat_div_rem(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(unit_lead(r.into_iter().map(|c| -c).collect()));
        }
        Some(SturmChain { chain })
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign(&eval_rat(p, x));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    fn sign_at(&self, x: &BigRational) -> i8 {
        sign(&eval_rat(&self.chain[0], x))
    }

    /// Newton iteration inside an isolating interval `(a, b]` of the
    /// square-free part, falling back to bisection when a step escapes.
    fn polish(&self, mut a: f64, mut b: f64) -> f64 {
        let sq = &self.chain[0];
        let df = rat_derivative(sq);
        let rb = BigRational::from_float(b).expect("finite");
        let fb = self.sign_at(&rb);
        if fb == 0 {
            return b;
        }
        // one simple root in (a, b), so the sign just right of a is -fb
        let fa = -fb;
        let to_f = |p: &[BigRational]| -> Vec<f64> { p.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect() };
        let (pf, dpf) = (to_f(sq), to_f(&df));
        let horner = |p: &[f64], x: f64| p.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let mut x = 0.5 * (a + b);
        for _ in 0..200 {
            let step = horner(&pf, x) / horner(&dpf, x);
            let mut next = x - step;
            if !next.is_finite() || next <= a || next >= b {
                next = 0.5 * (a + b);
            }
            if next <= a || next >= b {
                break;
            }
            let rn = BigRational::from_float(next).expect("finite");
            let s = self.sign_at(&rn);
            if s == 0 {
                return next;
            }
            if s == fa {
                a = next;
            } else {
                b = next;
            }
            x = next;
            if b - a <= 4.0 * f64::EPSILON * b.abs().max(1e-300) {
                break;
            }
        }
        0.5 * (a + b)
    }
}

mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_root() {
        let p = Polynomial::from_i64(&[-42, -1, 1]);
        assert_eq!(p.largest_real_root(None, None).unwrap(), 7.0);
        assert_eq!(p.to_string(), "x^2 - x - 42");
    }

    #[test]
    fn linear_root() {
        let p = Polynomial::linear(3);
        assert_eq!(p.largest_real_root(None, None).unwrap(), 3.0);
    }

    #[test]
    fn quartic_root_matches_bracket_signs() {
        let f = Polynomial::from_i64(&[45, -90, -92, 0, 1]);
        assert!(f.eval_f64(10.026) < 0.0 && f.eval_f64(10.027) > 0.0);
        let r = f.largest_real_root(None, None).unwrap();
        assert!((r - 10.026398668439942).abs() < 1e-12, "{r}");
        let bracketed = f.largest_real_root(Some(10.02), Some(10.03)).unwrap();
        assert!((bracketed - r).abs() < 1e-12);
    }

    #[test]
    fn repeated_roots_are_found() {
        // (x-2)^2 (x+1): no sign change at the largest root
        let p = Polynomial::linear(2).mul(&Polynomial::linear(2)).mul(&Polynomial::linear(-1));
        assert!((p.largest_real_root(None, None).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(p.count_roots(-5.0, 5.0).unwrap(), 2);
    }

    #[test]
    fn no_real_root() {
        let p = Polynomial::from_i64(&[1, 0, 1]);
        assert_eq!(p.largest_real_root(None, None), Err(SpectralError::NoRoot));
        let q = Polynomial::from_i64(&[-42, -1, 1]);
        assert_eq!(q.largest_real_root(Some(8.0), Some(9.0)), Err(SpectralError::NoRoot));
    }

    #[test]
    fn division() {
        let a = Polynomial::from_i64(&[0, 0, 0, -4, 0, 1]);
        let b = Polynomial::from_i64(&[-4, 0, 1]);
        assert!(b.divides(&a));
        assert!(!Polynomial::linear(1).divides(&a));
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_empty());
        assert_eq!(q.len(), 4);
    }

    #[test]
    fn doubled_flag_is_scale_invariant() {
        let f = Polynomial::from_i64(&[3, 0, 2]).doubled(); // x^2 + 3/2
        assert_eq!(f.coeff(0), BigRational::new(3.into(), 2.into()));
        let g = Polynomial::from_i64(&[3, 0, 2]);
        assert!(f.divides(&g) && g.divides(&f));
        let h = Polynomial::from_i64(&[-7, 0, 2]).doubled(); // x^2 - 7/2
        assert!((h.largest_real_root(None, None).unwrap() - 3.5f64.sqrt()).abs() < 1e-14);
        let diff = &f - &Polynomial::from_i64(&[1, 0, 1]);
        assert_eq!(diff, Polynomial::from_i64(&[1]).doubled());
    }
}
