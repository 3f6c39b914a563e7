//! Perron roots, exact characteristic polynomials, quotient matrices and
//! exact comparisons in quadratic fields.

mod poly;
mod power;
mod quad;
mod quotient;

pub use poly::Polynomial;
pub use power::{
    perron_vector, perron_vector_tol, rho, spectral_radius, SpectralCertificate, ARGMAX_TIE, DEFAULT_TOL,
};
pub use quad::{eval_poly_quad, monic_quadratic_root, quad_sign, square_free_split, QuadExt};
pub use quotient::{
    char_poly, is_equitable, quotient_report, verify_quotient_divides, EquitableWitness, Equitability,
    QuotientMatrix, QuotientReport, CHAR_POLY_CAP, QUOTIENT_ROOT_TOL,
};

/// Largest real root of `p`, optionally restricted to `(lo, hi]`.
pub fn largest_real_root(p: &Polynomial, lo: Option<f64>, hi: Option<f64>) -> Result<f64, crate::SpectralError> {
    p.largest_real_root(lo, hi)
}
