//! Poincaré polynomials along the chain of flips.
//!
//! Every chamber polynomial is computed twice: once by summing flip
//! differences back from the terminal chamber, once by a single coefficient
//! extraction from a closed generating function. The two routes share only
//! the exact arithmetic layer and the symmetric-product coefficients.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chambers::{self, first_index, last_index, moduli_dim, ChamberError};
use crate::exactpoly::{GeomKernel, LaurentPoly, PolyError, TruncatedBiSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error(transparent)]
    NotDivisible(#[from] PolyError),
    #[error("flip difference routes disagree at j={j}, d={d}, g={g}: {formula} vs {bundle}")]
    RouteMismatch {
        j: i64,
        d: i64,
        g: i64,
        formula: String,
        bundle: String,
    },
    #[error("negative t-exponent survived in P_t(FM^{i}) for d={d}, g={g}")]
    NegativeExponentSurvived { i: i64, d: i64, g: i64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Domain(#[from] ChamberError),
}

fn check_index(i: i64, d: i64, g: i64) -> Result<(), BettiError> {
    chambers::check_domain(d, g)?;
    let (lo, hi) = (first_index(d), last_index(d));
    if i < lo || i > hi {
        return Err(ChamberError::OutOfRange { i, d, lo, hi }.into());
    }
    Ok(())
}

fn one_minus_t2() -> LaurentPoly {
    LaurentPoly::from_i64s(0, &[1, 0, -1])
}

/// `(1+t)^{2g}`: Poincaré polynomial of the Jacobian (any `Pic^k X`).
pub fn jacobian_poincare(g: i64) -> LaurentPoly {
    LaurentPoly::one_plus_t_pow(2 * g as u32)
}

/// `(1 + xt)^{2g} / ((1 − x)(1 − x t²))` truncated at `x^order`.
fn macdonald_series(g: i64, order: usize) -> TruncatedBiSeries {
    let numerator = TruncatedBiSeries::binomial(order, &LaurentPoly::one(), &LaurentPoly::t_pow(1), 2 * g as u32);
    let k0 = TruncatedBiSeries::geometric(GeomKernel::OneMinusXTk(0), order);
    let k2 = TruncatedBiSeries::geometric(GeomKernel::OneMinusXTk(2), order);
    &(&numerator * &k0) * &k2
}

/// Poincaré polynomial of the n-th symmetric product of a genus-g curve
/// (Macdonald's generating function).
pub fn sym_product_poincare(n: usize, g: i64) -> LaurentPoly {
    macdonald_series(g, n)
        .coeff_x(n)
        .expect("series truncated exactly at n")
        .clone()
}

/// Which side of the flip at index `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlipSide {
    Minus,
    Plus,
}

/// `P_t(ℙW_j^±) = P_t(ℙ^{rank−1}) · P_t(Pic^{j+1}X) · P_t(S^{−d−j−1}X)`.
pub fn flip_locus_poincare(j: i64, d: i64, g: i64, side: FlipSide) -> Result<LaurentPoly, BettiError> {
    check_index(j, d, g)?;
    let rank = match side {
        FlipSide::Minus => d + g + 2 * j + 1,
        FlipSide::Plus => -d - j - 1,
    };
    let sym = sym_product_poincare((-d - j - 1) as usize, g);
    Ok(LaurentPoly::projective_space(rank - 1) * jacobian_poincare(g) * sym)
}

/// `P_t(FM^{j+1}) − P_t(FM^j)` by the closed quotient
/// `(t^{2d+2g+4j+2} − t^{−2d−2j−2})(1+t)^{2g} P_t(S^{−d−j−1}X) / (1 − t²)`,
/// cross-checked against `P_t(ℙW_j^+) − P_t(ℙW_j^−)`.
///
/// At `j = −d−1` there is no `FM^{j+1}` and the value is `−P_t(FM^{−d−1})`.
pub fn flip_difference(j: i64, d: i64, g: i64) -> Result<LaurentPoly, BettiError> {
    check_index(j, d, g)?;
    let sym = sym_product_poincare((-d - j - 1) as usize, g);
    let gap = LaurentPoly::t_pow(2 * d + 2 * g + 4 * j + 2) - LaurentPoly::t_pow(-2 * d - 2 * j - 2);
    let formula = (gap * jacobian_poincare(g) * sym).div_exact(&one_minus_t2())?;

    let bundle = flip_locus_poincare(j, d, g, FlipSide::Plus)? - flip_locus_poincare(j, d, g, FlipSide::Minus)?;
    if formula != bundle {
        return Err(BettiError::RouteMismatch {
            j,
            d,
            g,
            formula: formula.to_string(),
            bundle: bundle.to_string(),
        });
    }
    Ok(formula)
}

/// `P_t(FM^{−d−1})`: a `ℙ^{−d+g−2}`-bundle over the Jacobian.
pub fn terminal_poincare(d: i64, g: i64) -> Result<LaurentPoly, BettiError> {
    chambers::check_domain(d, g)?;
    let num = jacobian_poincare(g) * (LaurentPoly::one() - LaurentPoly::t_pow(-2 * d + 2 * g - 2));
    Ok(num.div_exact(&one_minus_t2())?)
}

/// `P_t(FM^i) = −Σ_{j=i}^{−d−1} flip_difference(j)`; the `j = −d−1` term
/// contributes the terminal polynomial.
pub fn fm_poincare_recursive(i: i64, d: i64, g: i64) -> Result<LaurentPoly, BettiError> {
    check_index(i, d, g)?;
    let mut acc = LaurentPoly::zero();
    for j in i..=last_index(d) {
        acc -= flip_difference(j, d, g)?;
    }
    if !acc.is_polynomial() {
        return Err(BettiError::NegativeExponentSurvived { i, d, g });
    }
    Ok(acc)
}

/// `P_t(FM^i)` by one coefficient extraction:
///
/// `−(1+t)^{2g}/(1−t²) · Coeff_{x^{−d−i−1}} (t^{2d+2g+4i+2}/(1−xt⁴) − t^{−2d−2i}/(t²−x)) · (1+xt)^{2g}/((1−x)(1−xt²))`
pub fn fm_poincare_closed(i: i64, d: i64, g: i64) -> Result<LaurentPoly, BettiError> {
    check_index(i, d, g)?;
    let n = (-d - i - 1) as usize;
    let rising = TruncatedBiSeries::geometric(GeomKernel::OneMinusXTk(4), n)
        .scale(&LaurentPoly::t_pow(2 * d + 2 * g + 4 * i + 2));
    let falling = TruncatedBiSeries::geometric(GeomKernel::T2MinusX, n).scale(&LaurentPoly::t_pow(-2 * d - 2 * i));
    let series = &(&rising - &falling) * &macdonald_series(g, n);
    let extracted = series.coeff_x(n)?;
    let p = (-(jacobian_poincare(g) * extracted)).div_exact(&one_minus_t2())?;
    if !p.is_polynomial() {
        return Err(BettiError::NegativeExponentSurvived { i, d, g });
    }
    Ok(p)
}

/// `(1+t)^{2g} ((1+t³)^{2g} − t^{2g}(1+t)^{2g}) / ((1−t²)(1−t⁴))`, the
/// Poincaré polynomial of the moduli of stable rank-2 bundles of odd degree.
pub fn u2d_poincare(g: i64) -> Result<LaurentPoly, BettiError> {
    if g < 2 {
        return Err(BettiError::PreconditionFailed(format!("genus must be at least 2, got {g}")));
    }
    let den = one_minus_t2() * LaurentPoly::from_i64s(0, &[1, 0, 0, 0, -1]);
    Ok(u2d_numerator(g).div_exact(&den)?)
}

fn u2d_numerator(g: i64) -> LaurentPoly {
    let two_g = 2 * g as u32;
    let cubes = LaurentPoly::from_i64s(0, &[1, 0, 0, 1]).pow(two_g);
    let correction = LaurentPoly::t_pow(2 * g) * jacobian_poincare(g);
    jacobian_poincare(g) * (cubes - correction)
}

/// `P_t(U(2,d))` recovered from the first chamber, where `FM^{⌊−d/2⌋}` is a
/// `ℙ^{−d−2g+1}`-bundle over `U(2,d)` once `−d > 4g − 4`.
pub fn u2d_from_bundle(g: i64, d: i64) -> Result<LaurentPoly, BettiError> {
    if d >= 0 || d % 2 == 0 {
        return Err(BettiError::PreconditionFailed(format!("d must be odd and negative, got {d}")));
    }
    if -d <= 4 * g - 4 {
        return Err(BettiError::PreconditionFailed(format!(
            "need -d > 4g-4 for the projective bundle structure, got d={d}, g={g}"
        )));
    }
    let fm = fm_poincare_closed(first_index(d), d, g)?;
    let fiber = LaurentPoly::projective_space(-d - 2 * g + 1);
    Ok(fm.div_exact(&fiber)?)
}

/// `(1+t)^{2g} ((1+t³)^{2g} − t^{2g}(1+t)^{2g}) / (1−t²)²`
pub fn mcon_poincare(g: i64) -> Result<LaurentPoly, BettiError> {
    if g < 2 {
        return Err(BettiError::PreconditionFailed(format!("genus must be at least 2, got {g}")));
    }
    let den = one_minus_t2().pow(2);
    Ok(u2d_numerator(g).div_exact(&den)?)
}

/// Outcome of comparing `P_t(FM^{−d−2})` with the blow-up of the terminal
/// space along `Pic × X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupCheck {
    pub d: i64,
    pub g: i64,
    /// Codimension of the center `Pic^{−d−1}X × X`.
    pub center_codim: i64,
    pub predicted: LaurentPoly,
    pub computed: LaurentPoly,
    pub consistent: bool,
}

impl BlowupCheck {
    pub fn difference(&self) -> LaurentPoly {
        &self.computed - &self.predicted
    }
}

/// `P_t(FM^{−d−2}) = P_t(FM^{−d−1}) + P_t(Pic × X)(P_t(ℙ^{c−1}) − 1)`, with
/// `c = −d + g − 3` and `P_t(Pic × X) = (1+t)^{2g}(1 + 2gt + t²)`.
pub fn blowup_consistency(d: i64, g: i64) -> Result<BlowupCheck, BettiError> {
    if d > -3 {
        return Err(BettiError::PreconditionFailed(format!("terminal flip needs d <= -3, got {d}")));
    }
    let codim = moduli_dim(d, g) - (g + 1);
    let center = jacobian_poincare(g) * LaurentPoly::from_i64s(0, &[1, 2 * g, 1]);
    let exceptional_gain = LaurentPoly::projective_space(codim - 1) - LaurentPoly::one();
    let predicted = terminal_poincare(d, g)? + center * exceptional_gain;
    let computed = fm_poincare_recursive(-d - 2, d, g)?;
    Ok(BlowupCheck {
        d,
        g,
        center_codim: codim,
        consistent: predicted == computed,
        predicted,
        computed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberBetti {
    pub i: i64,
    pub p_recursive: LaurentPoly,
    pub p_closed: LaurentPoly,
    pub agree: bool,
    pub degree: i64,
    pub palindromic: bool,
    pub nonneg: bool,
}

impl ChamberBetti {
    /// Poincaré duality shadow for a smooth projective variety of the given
    /// complex dimension.
    pub fn is_smooth_shadow(&self, dim: i64) -> bool {
        self.agree
            && self.palindromic
            && self.nonneg
            && self.degree == 2 * dim
            && self.p_closed.coeff(0) == 1.into()
            && self.p_closed.min_exponent() == Some(0)
    }
}

pub fn chamber_betti(i: i64, d: i64, g: i64) -> Result<ChamberBetti, BettiError> {
    let p_recursive = fm_poincare_recursive(i, d, g)?;
    let p_closed = fm_poincare_closed(i, d, g)?;
    Ok(ChamberBetti {
        i,
        agree: p_recursive == p_closed,
        degree: p_closed.max_exponent().unwrap_or(0),
        palindromic: p_closed.is_palindromic(),
        nonneg: p_closed.has_nonnegative_coeffs(),
        p_recursive,
        p_closed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct U2dEntry {
    pub closed: LaurentPoly,
    pub via_bundle: Option<LaurentPoly>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub d: i64,
    pub g: i64,
    pub entries: Vec<ChamberBetti>,
    /// Present for odd `d` only.
    pub u2d: Option<U2dEntry>,
    /// Present for odd `d` only.
    pub mcon: Option<LaurentPoly>,
    pub terminal: LaurentPoly,
    /// `None` when `d > −3` (no terminal flip).
    pub blowup_check: Option<bool>,
}

impl BettiReport {
    /// All chambers, or the single chamber `i` when given.
    pub fn build(d: i64, g: i64, chamber: Option<i64>) -> Result<Self, BettiError> {
        chambers::check_domain(d, g)?;
        let indices: Vec<i64> = match chamber {
            Some(i) => {
                check_index(i, d, g)?;
                vec![i]
            }
            None => (first_index(d)..=last_index(d)).collect(),
        };
        let entries = indices
            .into_iter()
            .map(|i| chamber_betti(i, d, g))
            .collect::<Result<Vec<_>, _>>()?;
        let (u2d, mcon) = if d % 2 != 0 {
            let closed = u2d_poincare(g)?;
            let via_bundle = (-d > 4 * g - 4).then(|| u2d_from_bundle(g, d)).transpose()?;
            let agree = via_bundle.as_ref().map(|v| *v == closed);
            (
                Some(U2dEntry {
                    closed,
                    via_bundle,
                    agree,
                }),
                Some(mcon_poincare(g)?),
            )
        } else {
            (None, None)
        };
        let blowup_check = (d <= -3).then(|| blowup_consistency(d, g).map(|b| b.consistent)).transpose()?;
        Ok(Self {
            d,
            g,
            entries,
            u2d,
            mcon,
            terminal: terminal_poincare(d, g)?,
            blowup_check,
        })
    }

    /// Every recorded consistency verdict holds.
    pub fn consistent(&self) -> bool {
        let dim = moduli_dim(self.d, self.g);
        let mcon_ok = match (&self.u2d, &self.mcon) {
            (Some(u), Some(m)) => {
                u.agree != Some(false) && *m == &u.closed * &LaurentPoly::from_i64s(0, &[1, 0, 1])
            }
            _ => true,
        };
        self.entries.iter().all(|e| e.is_smooth_shadow(dim)) && mcon_ok && self.blowup_check != Some(false)
    }

    /// Human-readable list of failed verdicts.
    pub fn failures(&self) -> Vec<String> {
        let dim = moduli_dim(self.d, self.g);
        let mut out = Vec::new();
        for e in &self.entries {
            if !e.agree {
                out.push(format!("two-route mismatch at (i={}, d={}, g={})", e.i, self.d, self.g));
            } else if !e.is_smooth_shadow(dim) {
                out.push(format!("smoothness shadow fails at (i={}, d={}, g={})", e.i, self.d, self.g));
            }
        }
        if let Some(u) = &self.u2d {
            if u.agree == Some(false) {
                out.push(format!("U(2,d) routes disagree at (d={}, g={})", self.d, self.g));
            }
            if let Some(m) = &self.mcon {
                if *m != &u.closed * &LaurentPoly::from_i64s(0, &[1, 0, 1]) {
                    out.push(format!("M_con != U(2,d)(1+t^2) at g={}", self.g));
                }
            }
        }
        if self.blowup_check == Some(false) {
            out.push(format!("blow-up relation fails at (d={}, g={})", self.d, self.g));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, c)
    }

    #[test]
    fn macdonald_small_cases() {
        assert!(sym_product_poincare(0, 3).is_one());
        for g in 1..=5 {
            assert_eq!(sym_product_poincare(1, g), lp(&[1, 2 * g, 1]));
        }
        assert_eq!(sym_product_poincare(2, 1), lp(&[1, 2, 2, 2, 1]));
    }

    #[test]
    fn terminal_examples() {
        let p = terminal_poincare(-5, 2).unwrap();
        assert_eq!(p, jacobian_poincare(2) * LaurentPoly::projective_space(5));
        assert_eq!(p.max_exponent(), Some(14));
        assert_eq!(terminal_poincare(-1, 2).unwrap(), jacobian_poincare(2) * lp(&[1, 0, 1]));
    }

    #[test]
    fn terminal_anchor_of_flip_difference() {
        let d = -5;
        let g = 2;
        let expected = ((LaurentPoly::t_pow(-2 * d + 2 * g - 2) - LaurentPoly::one()) * jacobian_poincare(g))
            .div_exact(&lp(&[1, 0, -1]))
            .unwrap();
        assert_eq!(flip_difference(-d - 1, d, g).unwrap(), expected);
        assert_eq!(-expected, terminal_poincare(d, g).unwrap());
    }

    #[test]
    fn recursive_terminal_is_terminal() {
        assert_eq!(fm_poincare_recursive(4, -5, 2).unwrap(), terminal_poincare(-5, 2).unwrap());
        assert_eq!(fm_poincare_closed(4, -5, 2).unwrap(), terminal_poincare(-5, 2).unwrap());
    }

    #[test]
    fn chamber_two_of_d_minus_five() {
        let p = fm_poincare_recursive(2, -5, 2).unwrap();
        assert_eq!(p.max_exponent(), Some(14));
        assert!(p.is_palindromic());
        assert_eq!(p, fm_poincare_closed(2, -5, 2).unwrap());
    }

    #[test]
    fn flip_locus_degrees_are_twice_dimensions() {
        for j in 2..=3 {
            let f = chambers::flip_locus(j, -5, 2).unwrap();
            let minus = flip_locus_poincare(j, -5, 2, FlipSide::Minus).unwrap();
            let plus = flip_locus_poincare(j, -5, 2, FlipSide::Plus).unwrap();
            assert_eq!(minus.max_exponent(), Some(2 * f.dim_pw_minus));
            assert_eq!(plus.max_exponent(), Some(2 * f.dim_pw_plus));
        }
    }

    #[test]
    fn u2d_genus_two() {
        let expected = jacobian_poincare(2) * lp(&[1, 0, 1, 4, 1, 0, 1]);
        assert_eq!(u2d_poincare(2).unwrap(), expected);
        assert_eq!(u2d_from_bundle(2, -5).unwrap(), expected);
        assert_eq!(mcon_poincare(2).unwrap(), expected * lp(&[1, 0, 1]));
    }

    #[test]
    fn bundle_route_preconditions() {
        assert!(matches!(u2d_from_bundle(2, -3), Err(BettiError::PreconditionFailed(_))));
        assert!(matches!(u2d_from_bundle(2, -6), Err(BettiError::PreconditionFailed(_))));
        assert!(matches!(blowup_consistency(-2, 2), Err(BettiError::PreconditionFailed(_))));
    }

    #[test]
    fn blowup_small_cases() {
        let b = blowup_consistency(-5, 2).unwrap();
        assert_eq!(b.center_codim, 4);
        assert!(b.consistent, "{}", b.difference());
        let b = blowup_consistency(-3, 2).unwrap();
        assert_eq!(b.center_codim, 2);
        assert!(b.consistent);
    }

    #[test]
    fn out_of_range_index() {
        assert!(matches!(
            fm_poincare_closed(1, -5, 2),
            Err(BettiError::Domain(ChamberError::OutOfRange { .. }))
        ));
        assert!(matches!(
            flip_difference(5, -5, 2),
            Err(BettiError::Domain(ChamberError::OutOfRange { .. }))
        ));
    }

    #[test]
    fn report_for_d_minus_five() {
        let r = BettiReport::build(-5, 2, None).unwrap();
        assert_eq!(r.entries.len(), 3);
        assert!(r.consistent(), "{:?}", r.failures());
        assert_eq!(r.u2d.as_ref().unwrap().agree, Some(true));
        let even = BettiReport::build(-6, 2, Some(4)).unwrap();
        assert!(even.u2d.is_none() && even.mcon.is_none());
        assert_eq!(even.entries.len(), 1);
    }
}
