//! Power series in `x`, truncated at a fixed order, with Laurent coefficients in `t`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::{LaurentPoly, PolyError};

/// `Σ_{k=0}^{N} c_k(t) x^k` modulo `x^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBiSeries {
    coeffs: Vec<LaurentPoly>,
}

/// Geometric kernels in `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomKernel {
    /// `1/(1 − x t^k) = Σ_n x^n t^{kn}`
    OneMinusXTk(i64),
    /// `1/(t² − x) = t^{−2} Σ_n (x/t²)^n`, expanded as a series in `x`.
    T2MinusX,
}

impl TruncatedBiSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, LaurentPoly::one())
    }

    /// The series whose `x^k` coefficient is `coeffs[k]`; entries past the
    /// order are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    /// `(a + b x)^n` expanded binomially, e.g. `(1 + x t)^{2g}`.
    pub fn binomial(order: usize, a: &LaurentPoly, b: &LaurentPoly, n: u32) -> Self {
        let mut binom = BigInt::from(1);
        let mut out = Self::zero(order);
        for k in 0..=(n as usize).min(order) {
            out.coeffs[k] = (a.pow(n - k as u32) * b.pow(k as u32)).scaled(&binom);
            binom = binom * BigInt::from(n as usize - k) / BigInt::from(k + 1);
        }
        out
    }

    pub fn geometric(kind: GeomKernel, order: usize) -> Self {
        let coeffs = (0..=order as i64).map(|n| match kind {
            GeomKernel::OneMinusXTk(k) => LaurentPoly::t_pow(k * n),
            GeomKernel::T2MinusX => LaurentPoly::t_pow(-2 * n - 2),
        });
        Self::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Coefficient of `x^n`.
    pub fn coeff_x(&self, n: usize) -> Result<&LaurentPoly, PolyError> {
        self.coeffs.get(n).ok_or(PolyError::OrderExceeded {
            requested: n,
            order: self.order(),
        })
    }

    /// Multiplies every coefficient by a Laurent polynomial in `t`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.order()), |acc, _| &acc * self)
    }
}

/// Exact expansion of a geometric kernel up to and including `x^order`.
pub fn geom_kernel(kind: GeomKernel, order: usize) -> TruncatedBiSeries {
    TruncatedBiSeries::geometric(kind, order)
}

/// Coefficient of `x^n` in `s`.
pub fn coeff_x(s: &TruncatedBiSeries, n: usize) -> Result<LaurentPoly, PolyError> {
    s.coeff_x(n).cloned()
}

impl<'a> Add<&'a TruncatedBiSeries> for &'a TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn add(self, rhs: &'a TruncatedBiSeries) -> TruncatedBiSeries {
        TruncatedBiSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a TruncatedBiSeries> for &'a TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn sub(self, rhs: &'a TruncatedBiSeries) -> TruncatedBiSeries {
        TruncatedBiSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn neg(self) -> TruncatedBiSeries {
        TruncatedBiSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Truncated Cauchy product; the result has the smaller of the two orders.
impl<'a> Mul<&'a TruncatedBiSeries> for &'a TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn mul(self, rhs: &'a TruncatedBiSeries) -> TruncatedBiSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedBiSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Mul for TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn mul(self, rhs: TruncatedBiSeries) -> TruncatedBiSeries {
        &self * &rhs
    }
}

impl Add for TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn add(self, rhs: TruncatedBiSeries) -> TruncatedBiSeries {
        &self + &rhs
    }
}

impl Sub for TruncatedBiSeries {
    type Output = TruncatedBiSeries;

    fn sub(self, rhs: TruncatedBiSeries) -> TruncatedBiSeries {
        &self - &rhs
    }
}
