//! Numerical models of framed modules and framed Hitchin pairs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::StabilityError;
use crate::exactpoly::{integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveContext {
    pub genus: i64,
    /// Degree of the framing target; 0 for the trivial line bundle.
    pub frame_degree: i64,
}

impl Default for CurveContext {
    fn default() -> Self {
        Self {
            genus: 2,
            frame_degree: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedType {
    pub rank: i64,
    pub degree: i64,
    /// ψ ≠ 0
    pub framing_nonzero: bool,
    /// ε ≠ 0 (pairs only). When false the caller asserts φ is not nilpotent.
    #[serde(default)]
    pub epsilon_nonzero: bool,
    /// δ: det E → 𝒩[E] is an isomorphism (oriented objects only).
    #[serde(default)]
    pub delta_iso: bool,
}

fn yes() -> bool {
    true
}

/// A proper nonzero subbundle `F ⊂ E`, described by its numerical data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubobjectData {
    pub id: String,
    pub rank: i64,
    pub degree: i64,
    /// ψ|_F ≠ 0. False means `F ⊆ ker ψ`.
    pub fr: bool,
    #[serde(default = "yes")]
    pub phi_invariant: bool,
    /// Ids of listed subobjects strictly containing this one.
    #[serde(default)]
    pub parents: Vec<String>,
}

impl SubobjectData {
    pub fn new(id: impl Into<String>, rank: i64, degree: i64, fr: bool) -> Self {
        Self {
            id: id.into(),
            rank,
            degree,
            fr,
            phi_invariant: true,
            parents: Vec::new(),
        }
    }

    pub fn phi_invariant(mut self, yes: bool) -> Self {
        self.phi_invariant = yes;
        self
    }

    pub fn inside(mut self, parent: impl Into<String>) -> Self {
        self.parents.push(parent.into());
        self
    }

    /// Plain slope `deg / rank`.
    pub fn slope(&self) -> Rational {
        Rational::new(self.degree.into(), self.rank.into())
    }
}

/// Names the two summands of a splitting `(E, ψ) = (K_max, 0) ⊕ (E', ψ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDescriptor {
    pub kernel: String,
    pub complement: String,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    genus: i64,
    frame_degree: i64,
    #[serde(rename = "type")]
    typ: FramedType,
    subs: Vec<SubobjectData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    split: Option<SplitDescriptor>,
}

/// A framed object together with a finite lattice of its subobjects.
///
/// Stability verdicts quantify over the listed subobjects only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelFile", into = "ModelFile")]
pub struct FramedModel {
    ctx: CurveContext,
    typ: FramedType,
    subs: Vec<SubobjectData>,
    split: Option<SplitDescriptor>,
    // strictly_inside[a][b]: sub a ⊊ sub b, transitively closed
    strictly_inside: Vec<Vec<bool>>,
}

impl TryFrom<ModelFile> for FramedModel {
    type Error = StabilityError;

    fn try_from(f: ModelFile) -> Result<Self, Self::Error> {
        FramedModel::new(
            CurveContext {
                genus: f.genus,
                frame_degree: f.frame_degree,
            },
            f.typ,
            f.subs,
            f.split,
        )
    }
}

impl From<FramedModel> for ModelFile {
    fn from(m: FramedModel) -> Self {
        ModelFile {
            genus: m.ctx.genus,
            frame_degree: m.ctx.frame_degree,
            typ: m.typ,
            subs: m.subs,
            split: m.split,
        }
    }
}

impl FramedModel {
    pub fn new(
        ctx: CurveContext,
        typ: FramedType,
        subs: Vec<SubobjectData>,
        split: Option<SplitDescriptor>,
    ) -> Result<Self, StabilityError> {
        let invalid = |msg: String| Err(StabilityError::InvalidModel(msg));
        if ctx.genus < 2 {
            return invalid(format!("genus must be at least 2, got {}", ctx.genus));
        }
        if typ.rank < 1 {
            return invalid(format!("rank must be positive, got {}", typ.rank));
        }
        let mut index = HashMap::with_capacity(subs.len());
        for (k, s) in subs.iter().enumerate() {
            if index.insert(s.id.as_str(), k).is_some() {
                return invalid(format!("duplicate subobject id {:?}", s.id));
            }
            if s.rank < 1 || s.rank >= typ.rank {
                return invalid(format!("subobject {:?} has rank {} outside 1..{}", s.id, s.rank, typ.rank));
            }
            if s.fr && !typ.framing_nonzero {
                return invalid(format!("subobject {:?} has nonzero framing but ψ = 0", s.id));
            }
        }
        let n = subs.len();
        let mut inside = vec![vec![false; n]; n];
        for (k, s) in subs.iter().enumerate() {
            for p in &s.parents {
                let Some(&j) = index.get(p.as_str()) else {
                    return invalid(format!("subobject {:?} names unknown parent {p:?}", s.id));
                };
                if j == k {
                    return invalid(format!("subobject {:?} lists itself as a parent", s.id));
                }
                inside[k][j] = true;
            }
        }
        // Warshall closure
        for via in 0..n {
            for a in 0..n {
                if inside[a][via] {
                    for b in 0..n {
                        if inside[via][b] {
                            inside[a][b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            if inside[a][a] {
                return invalid(format!("containment cycle through {:?}", subs[a].id));
            }
            for b in 0..n {
                if !inside[a][b] {
                    continue;
                }
                if subs[a].rank > subs[b].rank {
                    return invalid(format!(
                        "{:?} ⊂ {:?} but rank {} > {}",
                        subs[a].id, subs[b].id, subs[a].rank, subs[b].rank
                    ));
                }
                if subs[a].fr && !subs[b].fr {
                    return invalid(format!(
                        "{:?} ⊂ {:?} but ψ is nonzero on the smaller and zero on the larger",
                        subs[a].id, subs[b].id
                    ));
                }
            }
        }
        if let Some(sp) = &split {
            for id in [&sp.kernel, &sp.complement] {
                if !index.contains_key(id.as_str()) {
                    return invalid(format!("split names unknown subobject {id:?}"));
                }
            }
        }
        Ok(Self {
            ctx,
            typ,
            subs,
            split,
            strictly_inside: inside,
        })
    }

    /// Rank-`r` object of degree `d` with nonzero framing, framed by the trivial
    /// line bundle on a genus-2 curve.
    pub fn framed(rank: i64, degree: i64, subs: Vec<SubobjectData>) -> Result<Self, StabilityError> {
        Self::new(
            CurveContext::default(),
            FramedType {
                rank,
                degree,
                framing_nonzero: true,
                epsilon_nonzero: false,
                delta_iso: false,
            },
            subs,
            None,
        )
    }

    pub fn from_json(s: &str) -> Result<Self, StabilityError> {
        serde_json::from_str(s).map_err(|e| StabilityError::InvalidModel(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn ctx(&self) -> &CurveContext {
        &self.ctx
    }

    pub fn typ(&self) -> &FramedType {
        &self.typ
    }

    pub fn rank(&self) -> i64 {
        self.typ.rank
    }

    pub fn degree(&self) -> i64 {
        self.typ.degree
    }

    pub fn subs(&self) -> &[SubobjectData] {
        &self.subs
    }

    pub fn split(&self) -> Option<&SplitDescriptor> {
        self.split.as_ref()
    }

    pub fn sub(&self, id: &str) -> Option<&SubobjectData> {
        self.subs.iter().find(|s| s.id == id)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.subs.iter().position(|s| s.id == id)
    }

    /// `subs[a] ⊊ subs[b]`.
    pub fn strictly_inside(&self, a: usize, b: usize) -> bool {
        self.strictly_inside[a][b]
    }

    pub fn with_delta_iso(mut self, yes: bool) -> Self {
        self.typ.delta_iso = yes;
        self
    }

    pub fn with_epsilon(mut self, yes: bool) -> Self {
        self.typ.epsilon_nonzero = yes;
        self
    }

    pub fn with_context(mut self, ctx: CurveContext) -> Self {
        self.ctx = ctx;
        self
    }

    pub fn with_split(self, split: Option<SplitDescriptor>) -> Result<Self, StabilityError> {
        Self::new(self.ctx, self.typ, self.subs, split)
    }

    /// Same model with the φ-invariance flag of `subs[idx]` replaced.
    pub fn with_phi_flag(mut self, idx: usize, yes: bool) -> Self {
        self.subs[idx].phi_invariant = yes;
        self
    }

    /// `P/rank` of E up to the common `m + 1 − g` shift: `(d − δ(ψ)σ)/r`.
    pub fn ambient_slope(&self, sigma: &Rational) -> Rational {
        reduced_framed_slope(self.typ.rank, self.typ.degree, true, sigma, self.typ.framing_nonzero)
    }

    pub fn sub_slope(&self, idx: usize, sigma: &Rational) -> Rational {
        let s = &self.subs[idx];
        reduced_framed_slope(s.rank, s.degree, s.fr, sigma, self.typ.framing_nonzero)
    }
}

/// `(degree − δ·σ)/rank` with `δ = 1` iff both `fr` and the ambient framing
/// are nonzero.
///
/// On a curve `P_F(m)/rk F = m + 1 − g + deg F/rk F`, so comparing reduced
/// framed Hilbert polynomials against a constant σ is comparing these values.
pub fn reduced_framed_slope(rank: i64, degree: i64, fr: bool, sigma: &Rational, framing_ambient_nonzero: bool) -> Rational {
    debug_assert!(rank >= 1, "rank must be positive");
    let mut num = integer(degree);
    if fr && framing_ambient_nonzero {
        num -= sigma;
    }
    num / integer(rank)
}
