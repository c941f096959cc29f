//! Oriented framed modules and oriented framed Hitchin pairs, evaluated at
//! their canonical parameter `σ_max = σ_{E,(φ,)ψ}`.

use super::{reduced_framed_slope, FramedModel, StabilityError};
use crate::exactpoly::{integer, Rational};

/// `(deg − σ)/rank`: every subobject is shifted by σ, framed or not.
pub(crate) fn oriented_slope(rank: i64, degree: i64, sigma: &Rational) -> Rational {
    (integer(degree) - sigma) / integer(rank)
}

impl FramedModel {
    fn counts(&self, k: usize, pair: bool) -> bool {
        !pair || self.subs()[k].phi_invariant
    }

    /// ψ injective (framed modules), or no φ-invariant subobject in `ker ψ`
    /// (pairs).
    pub fn kernel_is_trivial(&self, pair: bool) -> bool {
        self.typ().framing_nonzero && (0..self.subs().len()).all(|k| self.subs()[k].fr || !self.counts(k, pair))
    }

    /// The oriented inequality at parameter `s` over the relevant subobjects.
    pub(crate) fn oriented_inequalities(&self, s: &Rational, pair: bool, strict: bool) -> bool {
        let ambient = oriented_slope(self.rank(), self.degree(), s);
        (0..self.subs().len()).filter(|&k| self.counts(k, pair)).all(|k| {
            let f = &self.subs()[k];
            let lhs = oriented_slope(f.rank, f.degree, s);
            if strict {
                lhs < ambient
            } else {
                lhs <= ambient
            }
        })
    }

    pub fn is_oriented_semistable(&self, pair: bool) -> bool {
        if self.kernel_is_trivial(pair) {
            return true;
        }
        if !self.typ().delta_iso {
            return false;
        }
        match self.sigma_max(pair) {
            Some(s) if s >= integer(0) => self.oriented_inequalities(&s, pair, false),
            _ => false,
        }
    }

    /// Stable via the strict inequality, or via the split alternative when the
    /// model carries a split descriptor.
    pub fn is_oriented_stable(&self, pair: bool) -> bool {
        if self.kernel_is_trivial(pair) {
            return true;
        }
        if !self.typ().delta_iso {
            return false;
        }
        let Some(s) = self.sigma_max(pair) else {
            return false;
        };
        if s <= integer(0) {
            return false;
        }
        self.oriented_inequalities(&s, pair, true) || (self.split().is_some() && self.split_case_holds(pair).unwrap_or(false))
    }

    /// Checks that `(E, ψ) = (K_max, 0) ⊕ (E', ψ)` as described by the split
    /// descriptor, with `K_max` stable, `(E', ψ)` σ_max-stable and
    /// `deg K_max / rk K_max = (deg E' − σ_max)/rk E'`.
    ///
    /// Stability of the summands is tested against the listed subobjects they
    /// contain.
    pub fn split_case_holds(&self, pair: bool) -> Result<bool, StabilityError> {
        let sp = self.split().ok_or(StabilityError::MissingSplitData)?;
        let missing = |id: &str| StabilityError::InvalidModel(format!("split names unknown subobject {id:?}"));
        let ki = self.index_of(&sp.kernel).ok_or_else(|| missing(&sp.kernel))?;
        let ci = self.index_of(&sp.complement).ok_or_else(|| missing(&sp.complement))?;
        let (k, c) = (&self.subs()[ki], &self.subs()[ci]);
        if !self.typ().framing_nonzero || k.fr || !c.fr {
            return Ok(false);
        }
        if pair && !(k.phi_invariant && c.phi_invariant) {
            return Ok(false);
        }
        if self.k_max(pair).map(|m| m.id.as_str()) != Some(k.id.as_str()) {
            return Ok(false);
        }
        if k.rank + c.rank != self.rank() || k.degree + c.degree != self.degree() {
            return Ok(false);
        }
        let Some(s) = self.sigma_max(pair) else {
            return Ok(false);
        };
        let k_slope = k.slope();
        let c_slope = reduced_framed_slope(c.rank, c.degree, true, &s, true);
        if k_slope != c_slope {
            return Ok(false);
        }
        let inside = |outer: usize| (0..self.subs().len()).filter(move |&j| self.strictly_inside(j, outer) && self.counts(j, pair));
        let kernel_stable = inside(ki).all(|j| self.subs()[j].slope() < k_slope);
        let complement_stable = inside(ci).all(|j| {
            let f = &self.subs()[j];
            reduced_framed_slope(f.rank, f.degree, f.fr, &s, true) < c_slope
        });
        Ok(kernel_stable && complement_stable)
    }
}
