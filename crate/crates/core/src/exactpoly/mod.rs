//! Exact arithmetic: Laurent polynomials in `t`, `x`-truncated series with
//! Laurent coefficients, and big rationals.
//!
//! Nothing here touches floating point. Division is exact division only; a
//! remainder is an error, never a series expansion.

mod laurent;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use rational::{format_rational, integer, is_positive, parse_rational, rational, serde_str, Rational};
pub use series::{coeff_x, geom_kernel, GeomKernel, TruncatedBiSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{numerator} is not exactly divisible by {denominator}")]
    NotDivisible { numerator: String, denominator: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient x^{requested} requested from a series truncated at x^{order}")]
    OrderExceeded { requested: usize, order: usize },
}

/// `a + b`
pub fn lp_add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a + b
}

/// `a · b`
pub fn lp_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

/// `a^n`
pub fn lp_pow(a: &LaurentPoly, n: u32) -> LaurentPoly {
    a.pow(n)
}

/// The `q` with `q · den = num`.
pub fn lp_div_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    num.div_exact(den)
}
