//! Comparison of framed-module and constrained framed-Hitchin-pair verdicts.
//!
//! A numerical lattice cannot see `φ ∈ End((E, ψ))`, so its consequences are
//! imposed as a closure axiom: `ker ψ`, every maximal destabilizer (at σ and
//! at σ_max) and the summands of a split are φ-invariant.

use serde::{Deserialize, Serialize};

use super::oriented::oriented_slope;
use super::{FramedModel, StabilityError};
use crate::exactpoly::{serde_str, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictPair {
    pub fm: bool,
    pub pair: bool,
}

impl VerdictPair {
    pub fn agree(&self) -> bool {
        self.fm == self.pair
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    #[serde(with = "serde_str")]
    pub sigma: Rational,
    pub semistable: VerdictPair,
    pub stable: VerdictPair,
    pub oriented_semistable: VerdictPair,
    pub oriented_stable: VerdictPair,
    /// A non-φ-invariant subobject separating the verdicts, if any.
    pub witness: Option<String>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        [self.semistable, self.stable, self.oriented_semistable, self.oriented_stable]
            .iter()
            .all(VerdictPair::agree)
    }
}

// Indices of the subobjects of maximal value, when that value reaches `floor`.
fn top_reaching(values: &[Rational], floor: &Rational) -> Vec<usize> {
    let Some(best) = values.iter().max() else {
        return Vec::new();
    };
    if best < floor {
        return Vec::new();
    }
    (0..values.len()).filter(|&k| values[k] == *best).collect()
}

impl FramedModel {
    fn framed_top(&self, sigma: &Rational) -> Vec<usize> {
        let slopes: Vec<_> = (0..self.subs().len()).map(|k| self.sub_slope(k, sigma)).collect();
        top_reaching(&slopes, &self.ambient_slope(sigma))
    }

    fn oriented_top(&self) -> Vec<usize> {
        let Some(s) = self.sigma_max(false) else {
            return Vec::new();
        };
        let slopes: Vec<_> = self.subs().iter().map(|f| oriented_slope(f.rank, f.degree, &s)).collect();
        top_reaching(&slopes, &oriented_slope(self.rank(), self.degree(), &s))
    }

    fn split_indices(&self) -> Option<(usize, usize)> {
        let sp = self.split()?;
        Some((self.index_of(&sp.kernel)?, self.index_of(&sp.complement)?))
    }

    /// Sets exactly the φ-invariance flags the closure axiom demands at σ.
    pub fn close_under_constraint(mut self, sigma: &Rational) -> FramedModel {
        for k in 0..self.subs().len() {
            if !self.subs()[k].fr {
                self = self.with_phi_flag(k, true);
            }
        }
        let mut forced = self.framed_top(sigma);
        forced.extend(self.oriented_top());
        if let Some((a, b)) = self.split_indices() {
            forced.extend([a, b]);
        }
        for k in forced {
            self = self.with_phi_flag(k, true);
        }
        self
    }
}

/// Describes the first breach of the closure axiom at σ, if any.
pub fn constraint_closure_violation(m: &FramedModel, sigma: &Rational) -> Option<String> {
    let subs = m.subs();
    if let Some(f) = subs.iter().find(|f| !f.fr && !f.phi_invariant) {
        return Some(format!("{:?} lies in ker ψ but is not φ-invariant", f.id));
    }
    if let Some(k) = m.framed_top(sigma).into_iter().find(|&k| !subs[k].phi_invariant) {
        return Some(format!("maximal destabilizer {:?} at σ={sigma} is not φ-invariant", subs[k].id));
    }
    if let Some(k) = m.oriented_top().into_iter().find(|&k| !subs[k].phi_invariant) {
        return Some(format!("maximal destabilizer {:?} at σ_max is not φ-invariant", subs[k].id));
    }
    if let Some((ki, ci)) = m.split_indices() {
        let (k, c) = (&subs[ki], &subs[ci]);
        if !(k.phi_invariant && c.phi_invariant) {
            return Some(format!("split summands {:?}, {:?} are not both φ-invariant", k.id, c.id));
        }
        let cap = k.degree.min(c.degree);
        if let Some(f) = subs.iter().enumerate().find(|&(j, f)| j != ki && j != ci && f.rank == 1 && f.degree > cap) {
            return Some(format!(
                "{:?} has degree {} above both summands of the split",
                f.1.id, f.1.degree
            ));
        }
    }
    None
}

/// Framed-module versus pair verdicts at σ, without checking any axiom.
pub fn compare_rank2_verdicts(m: &FramedModel, sigma: &Rational) -> EquivalenceReport {
    let semistable = VerdictPair {
        fm: m.is_fm_semistable(sigma),
        pair: m.is_pair_semistable(sigma),
    };
    let stable = VerdictPair {
        fm: m.is_fm_stable(sigma),
        pair: m.is_pair_stable(sigma),
    };
    let oriented_semistable = VerdictPair {
        fm: m.is_oriented_semistable(false),
        pair: m.is_oriented_semistable(true),
    };
    let oriented_stable = VerdictPair {
        fm: m.is_oriented_stable(false),
        pair: m.is_oriented_stable(true),
    };
    let mut report = EquivalenceReport {
        sigma: sigma.clone(),
        semistable,
        stable,
        oriented_semistable,
        oriented_stable,
        witness: None,
    };
    if !report.holds() {
        report.witness = witness(m, sigma);
    }
    report
}

fn witness(m: &FramedModel, sigma: &Rational) -> Option<String> {
    let ambient = m.ambient_slope(sigma);
    let hidden = |k: usize| !m.subs()[k].phi_invariant;
    (0..m.subs().len())
        .filter(|&k| hidden(k))
        .find(|&k| m.sub_slope(k, sigma) >= ambient)
        .or_else(|| {
            let s = m.sigma_max(false)?;
            let amb = oriented_slope(m.rank(), m.degree(), &s);
            (0..m.subs().len())
                .filter(|&k| hidden(k))
                .find(|&k| oriented_slope(m.subs()[k].rank, m.subs()[k].degree, &s) >= amb)
        })
        .or_else(|| (0..m.subs().len()).find(|&k| hidden(k)))
        .map(|k| m.subs()[k].id.clone())
}

/// Checks that constrained-pair and framed-module (semi)stability agree at
/// σ, for both plain and oriented objects, on a rank-2 closed model.
pub fn verify_rank2_equivalences(m: &FramedModel, sigma: &Rational) -> Result<EquivalenceReport, StabilityError> {
    if m.rank() != 2 {
        return Err(StabilityError::InvalidModel(format!("rank must be 2, got {}", m.rank())));
    }
    if let Some(why) = constraint_closure_violation(m, sigma) {
        return Err(StabilityError::AxiomViolated(why));
    }
    Ok(compare_rank2_verdicts(m, sigma))
}
