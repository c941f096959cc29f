//! σ-(semi)stability of framed modules, framed Hitchin pairs and their
//! oriented versions, evaluated on finite subobject lattices.
//!
//! A [`FramedModel`] lists the numerical data of some subbundles of `E`.
//! Every verdict quantifies over exactly those subobjects, so a model is only
//! as good as its lattice: `fr = false` is read as `F ⊆ ker ψ`, and the
//! maximal-rank such subobject stands for `ker ψ` itself.

mod equivalence;
mod model;
mod oriented;
pub mod sample;

pub use equivalence::{compare_rank2_verdicts, constraint_closure_violation, verify_rank2_equivalences, EquivalenceReport, VerdictPair};
pub use model::{reduced_framed_slope, CurveContext, FramedModel, FramedType, SplitDescriptor, SubobjectData};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("subobjects {first:?} and {second:?} tie for maximal destabilizer but are incomparable")]
    AmbiguousModel { first: String, second: String },
    #[error("split-case evaluation requested but the model has no split descriptor")]
    MissingSplitData,
    #[error("constraint closure violated: {0}")]
    AxiomViolated(String),
}

/// One successive quotient `E_k / E_{k−1}` of a Harder–Narasimhan filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub rank: i64,
    pub degree: i64,
    /// Induced framing on the quotient is nonzero.
    pub framed: bool,
}

impl GradedPiece {
    pub fn slope(&self, sigma: &Rational) -> Rational {
        reduced_framed_slope(self.rank, self.degree, self.framed, sigma, true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnFiltration {
    /// Ids of `E_1 ⊊ E_2 ⊊ …`; `E` itself is implicit.
    pub steps: Vec<String>,
    pub graded: Vec<GradedPiece>,
}

impl HnFiltration {
    pub fn slopes(&self, sigma: &Rational) -> Vec<Rational> {
        self.graded.iter().map(|p| p.slope(sigma)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.is_empty()
    }
}

// A candidate for the maximal destabilizer: index into the model plus the
// numerical data it has in the current quotient.
struct Candidate {
    idx: usize,
    rank: i64,
    slope: Rational,
}

impl FramedModel {
    fn all_inequalities(&self, sigma: &Rational, strict: bool, only_phi: bool) -> bool {
        let ambient = self.ambient_slope(sigma);
        self.subs()
            .iter()
            .enumerate()
            .filter(|(_, s)| !only_phi || s.phi_invariant)
            .all(|(k, _)| {
                let s = self.sub_slope(k, sigma);
                if strict {
                    s < ambient
                } else {
                    s <= ambient
                }
            })
    }

    /// Picks the maximal-slope candidate, breaking ties by rank and then by
    /// containment.
    fn select_max(&self, cands: Vec<Candidate>) -> Result<Option<Candidate>, StabilityError> {
        let Some(best) = cands.iter().map(|c| &c.slope).max().cloned() else {
            return Ok(None);
        };
        let mut top: Vec<Candidate> = cands.into_iter().filter(|c| c.slope == best).collect();
        let max_rank = top.iter().map(|c| c.rank).max().unwrap_or(0);
        top.retain(|c| c.rank == max_rank);
        let winner = top
            .iter()
            .position(|c| top.iter().all(|o| o.idx == c.idx || self.strictly_inside(o.idx, c.idx)));
        match winner {
            Some(w) => Ok(Some(top.swap_remove(w))),
            None => {
                let (a, b) = first_incomparable(self, &top);
                Err(StabilityError::AmbiguousModel {
                    first: self.subs()[a].id.clone(),
                    second: self.subs()[b].id.clone(),
                })
            }
        }
    }

    /// σ-semistable as a framed module: every listed subobject has reduced
    /// framed slope at most that of E.
    pub fn is_fm_semistable(&self, sigma: &Rational) -> bool {
        self.all_inequalities(sigma, false, false)
    }

    pub fn is_fm_stable(&self, sigma: &Rational) -> bool {
        self.all_inequalities(sigma, true, false)
    }

    /// σ-semistable as a framed Hitchin pair: only φ-invariant subobjects count.
    pub fn is_pair_semistable(&self, sigma: &Rational) -> bool {
        self.all_inequalities(sigma, false, true)
    }

    pub fn is_pair_stable(&self, sigma: &Rational) -> bool {
        self.all_inequalities(sigma, true, true)
    }

    /// The subobject of maximal reduced framed slope (then maximal rank, then
    /// largest under containment), provided its slope is at least that of E.
    ///
    /// `None` means every subobject has slope strictly below E's. At equality
    /// the subobject is returned: it witnesses strict semistability.
    pub fn max_destabilizer(&self, sigma: &Rational) -> Result<Option<&SubobjectData>, StabilityError> {
        let cands = (0..self.subs().len())
            .map(|k| Candidate {
                idx: k,
                rank: self.subs()[k].rank,
                slope: self.sub_slope(k, sigma),
            })
            .collect();
        let ambient = self.ambient_slope(sigma);
        Ok(self
            .select_max(cands)?
            .filter(|c| c.slope >= ambient)
            .map(|c| &self.subs()[c.idx]))
    }

    /// Greedy Harder–Narasimhan filtration: repeatedly split off the maximal
    /// destabilizer of the current quotient while it strictly exceeds the
    /// quotient's slope.
    pub fn hn_filtration(&self, sigma: &Rational) -> Result<HnFiltration, StabilityError> {
        let (r, d) = (self.rank(), self.degree());
        let psi = self.typ().framing_nonzero;
        let mut steps = Vec::new();
        let mut graded = Vec::new();
        let mut base: Option<usize> = None;
        loop {
            let (base_rank, base_deg, base_fr) = match base {
                Some(b) => {
                    let s = &self.subs()[b];
                    (s.rank, s.degree, s.fr)
                }
                None => (0, 0, false),
            };
            // quotient framing vanishes once a piece carrying ψ has been split off
            let quotient_psi = psi && !base_fr;
            let q_rank = r - base_rank;
            let q_deg = d - base_deg;
            let q_slope = reduced_framed_slope(q_rank, q_deg, true, sigma, quotient_psi);
            let cands = self
                .subs()
                .iter()
                .enumerate()
                .filter(|(k, _)| base.is_none_or(|b| self.strictly_inside(b, *k)))
                .map(|(k, s)| {
                    let rank = s.rank - base_rank;
                    Candidate {
                        idx: k,
                        rank,
                        slope: reduced_framed_slope(rank, s.degree - base_deg, s.fr && quotient_psi, sigma, true),
                    }
                })
                .filter(|c| c.rank > 0)
                .collect();
            match self.select_max(cands)? {
                Some(c) if c.slope > q_slope => {
                    let s = &self.subs()[c.idx];
                    steps.push(s.id.clone());
                    graded.push(GradedPiece {
                        rank: c.rank,
                        degree: s.degree - base_deg,
                        framed: s.fr && quotient_psi,
                    });
                    base = Some(c.idx);
                }
                _ => {
                    graded.push(GradedPiece {
                        rank: q_rank,
                        degree: q_deg,
                        framed: quotient_psi,
                    });
                    return Ok(HnFiltration { steps, graded });
                }
            }
        }
    }

    /// The maximal-rank subobject inside `ker ψ`, standing for `ker ψ`.
    pub fn kernel(&self) -> Option<&SubobjectData> {
        let mut best: Option<&SubobjectData> = None;
        for s in self.subs().iter().filter(|s| !s.fr) {
            if best.is_none_or(|b| s.rank > b.rank) {
                best = Some(s);
            }
        }
        best
    }

    /// `deg E − (rk E / rk ker ψ)(deg E − deg ℋ)`; every σ-semistable object
    /// with `ψ ≠ 0`, `ker ψ ≠ 0` has σ at most this.
    pub fn sigma_upper_bound(&self) -> Option<Rational> {
        if !self.typ().framing_nonzero {
            return None;
        }
        let k = self.kernel()?;
        let d = integer(self.degree());
        let gap = integer(self.degree() - self.ctx().frame_degree);
        Some(d - Rational::new(self.rank().into(), k.rank.into()) * gap)
    }

    /// Stable for all large σ iff ψ is injective, i.e. no listed subobject lies
    /// in `ker ψ`.
    pub fn final_chamber_stable(&self) -> bool {
        self.subs().iter().all(|s| s.fr)
    }

    /// `K_max`: the subobject of `ker ψ` (φ-invariant if `use_phi`) of maximal
    /// slope, then maximal rank, then largest under containment. When ψ = 0,
    /// `E` itself is eligible and `None` is returned if it wins.
    pub fn k_max(&self, use_phi: bool) -> Option<&SubobjectData> {
        let eligible: Vec<usize> = (0..self.subs().len())
            .filter(|&k| {
                let s = &self.subs()[k];
                !s.fr && (!use_phi || s.phi_invariant)
            })
            .collect();
        let mut best: Option<usize> = None;
        for &k in &eligible {
            let better = match best {
                None => true,
                Some(b) => {
                    let (sk, sb) = (&self.subs()[k], &self.subs()[b]);
                    match sk.slope().cmp(&sb.slope()) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Equal => {
                            sk.rank > sb.rank || (sk.rank == sb.rank && self.strictly_inside(b, k))
                        }
                    }
                }
            };
            if better {
                best = Some(k);
            }
        }
        let best = best.map(|k| &self.subs()[k]);
        if !self.typ().framing_nonzero {
            let e_slope = Rational::new(self.degree().into(), self.rank().into());
            if best.is_none_or(|b| b.slope() <= e_slope) {
                return None;
            }
        }
        best
    }

    /// Canonical parameter `σ_{E,(φ,)ψ} = d − (r / rk K_max) deg K_max`.
    ///
    /// `None` when `ker ψ` contains no eligible subobject. With ψ = 0 the
    /// whole of E may serve as `K_max`, giving 0.
    pub fn sigma_max(&self, use_phi: bool) -> Option<Rational> {
        let d = integer(self.degree());
        match self.k_max(use_phi) {
            Some(k) => Some(d - integer(self.rank()) * k.slope()),
            None if !self.typ().framing_nonzero => Some(integer(0)),
            None => None,
        }
    }
}

fn first_incomparable(m: &FramedModel, top: &[Candidate]) -> (usize, usize) {
    for a in top {
        for b in top {
            if a.idx != b.idx && !m.strictly_inside(a.idx, b.idx) && !m.strictly_inside(b.idx, a.idx) {
                return (a.idx, b.idx);
            }
        }
    }
    (top[0].idx, top[top.len() - 1].idx)
}
