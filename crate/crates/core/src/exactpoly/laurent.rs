//! Laurent polynomials in a single variable `t` with big-integer coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PolyError;

/// An exact Laurent polynomial `Σ c_e t^e`, `e ∈ ℤ`, `c_e ∈ ℤ`.
///
/// Stored densely from the lowest nonzero exponent. Both ends are trimmed, so
/// no zero coefficient is ever stored at either end and the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · t^exp`
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_dense(exp, vec![c.into()])
    }

    /// `t^exp`
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds `Σ coeffs[k] t^{low+k}`.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integer coefficients starting at `t^low`.
    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_dense(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap_or(low);
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    /// Poincaré polynomial of ℙⁿ, `1 + t² + … + t^{2n}`; zero for `n < 0`
    /// (the empty projective space).
    pub fn projective_space(n: i64) -> Self {
        if n < 0 {
            return Self::zero();
        }
        Self::from_terms((0..=n).map(|k| (2 * k, 1)))
    }

    /// `(1 + t)^n`, the Poincaré polynomial of an n-torus.
    pub fn one_plus_t_pow(n: u32) -> Self {
        Self::from_i64s(0, &[1, 1]).pow(n)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True iff no negative exponent carries a nonzero coefficient.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `t^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Dense coefficient list `[c_0, c_1, …, c_deg]` of a polynomial (Betti
    /// numbers when this is a Poincaré polynomial). `None` if a negative
    /// exponent survives.
    pub fn dense_coeffs(&self) -> Option<Vec<BigInt>> {
        if !self.is_polynomial() {
            return None;
        }
        let mut out = vec![BigInt::zero(); self.low.max(0) as usize];
        out.extend(self.coeffs.iter().cloned());
        Some(out)
    }

    /// Symmetric under `t^{lo+k} ↔ t^{hi−k}`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Value at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Value at `t = −1`.
    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.is_even() { c.clone() } else { -c })
            .sum()
    }

    /// Multiplication by `t^shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `q` with `q · den = self`.
    ///
    /// Both operands are normalized to start at `t^0`; the divisor then has a
    /// nonzero constant term and the quotient is read off from the low end.
    /// Fails with [`PolyError::NotDivisible`] unless the quotient exists with
    /// integer coefficients.
    pub fn div_exact(&self, den: &Self) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_divisible = || PolyError::NotDivisible {
            numerator: self.to_string(),
            denominator: den.to_string(),
        };
        let n = self.coeffs.len();
        let m = den.coeffs.len();
        if n < m {
            return Err(not_divisible());
        }
        let qlen = n - m + 1;
        let mut rem = self.coeffs.clone();
        let mut quot = Vec::with_capacity(qlen);
        let lead = &den.coeffs[0];
        for k in 0..qlen {
            let (q, r) = rem[k].div_rem(lead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            if !q.is_zero() {
                for (j, dc) in den.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * dc;
                }
            }
            quot.push(q);
        }
        if rem[qlen..].iter().any(|c| !c.is_zero()) {
            return Err(not_divisible());
        }
        Ok(Self::from_dense(self.low - den.low, quot))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            match e {
                0 => write!(f, "{abs}")?,
                1 if unit => f.write_str("t")?,
                1 => write!(f, "{abs}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{abs}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exponent().max(rhs.max_exponent()).unwrap_or(low);
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for p in [self, rhs] {
            let off = (p.low - low) as usize;
            for (k, c) in p.coeffs.iter().enumerate() {
                coeffs[off + k] += c;
            }
        }
        LaurentPoly::from_dense(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
        impl $tra<LaurentPoly> for LaurentPoly {
            fn $ma(&mut self, rhs: LaurentPoly) {
                *self = (&*self).$m(&rhs);
            }
        }
        impl<'a> $tra<&'a LaurentPoly> for LaurentPoly {
            fn $ma(&mut self, rhs: &'a LaurentPoly) {
                *self = (&*self).$m(rhs);
            }
        }
    };
}

forward_owned_binop!(Add, add, AddAssign, add_assign);
forward_owned_binop!(Sub, sub, SubAssign, sub_assign);
forward_owned_binop!(Mul, mul, MulAssign, mul_assign);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

// JSON form: {"terms": [[exponent, "decimal coefficient"], ...]}, ascending.
#[derive(Serialize, Deserialize)]
struct TermsRepr {
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TermsRepr {
            terms: self.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TermsRepr::deserialize(d)?;
        let mut last: Option<i64> = None;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (e, c) in repr.terms {
            if last.is_some_and(|l| l >= e) {
                return Err(D::Error::custom("exponents must be strictly ascending"));
            }
            last = Some(e);
            let c: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid coefficient {c:?}")))?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
