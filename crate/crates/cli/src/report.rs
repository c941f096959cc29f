//! Typed reports; each one serializes to JSON and parses back unchanged.

use flipchain_core::chambers::{build_chambers, chamber_of, moduli_dim, ChamberData, ChamberError, FlipLocusData, Location};
use flipchain_core::exactpoly::{integer, is_positive, serde_str, Rational};
use flipchain_core::stability::{compare_rank2_verdicts, verify_rank2_equivalences, EquivalenceReport, FramedModel, HnFiltration, StabilityError};
use flipchain_core::verify::{stability_suite, verify_cell, CellReport, Grid, SuiteReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub d: i64,
    pub g: i64,
    pub dim: i64,
    pub data: ChamberData,
    pub flip_loci: Vec<FlipLocusData>,
}

impl ChamberReport {
    pub fn build(d: i64, g: i64) -> Result<Self, ChamberError> {
        let data = build_chambers(d, g)?;
        Ok(Self {
            d,
            g,
            dim: moduli_dim(d, g),
            flip_loci: data.flip_loci(),
            data,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub semistable: bool,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaEntry {
    #[serde(with = "serde_str")]
    pub sigma: Rational,
    /// Position relative to the rank-2 chamber structure, when it applies.
    pub location: Option<Location>,
    pub fm: Verdicts,
    pub pair: Verdicts,
    pub max_destabilizer: Option<String>,
    pub hn: Option<HnFiltration>,
    #[serde(with = "serde_str::vec")]
    pub hn_slopes: Vec<Rational>,
    pub equivalence: Option<EquivalenceReport>,
    /// Why the equivalence check was skipped, or the ambiguity that blocked HN.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub rank: i64,
    pub degree: i64,
    pub genus: i64,
    #[serde(with = "serde_str::option")]
    pub sigma_bound: Option<Rational>,
    #[serde(with = "serde_str::option")]
    pub sigma_max: Option<Rational>,
    #[serde(with = "serde_str::option")]
    pub sigma_max_pair: Option<Rational>,
    pub final_chamber_stable: Option<bool>,
    pub oriented_fm: Verdicts,
    pub oriented_pair: Verdicts,
    pub entries: Vec<SigmaEntry>,
}

impl StabilityReport {
    /// Evaluates the model at `sigmas`, or, for rank-2 models of negative
    /// degree, at every chamber representative and wall.
    pub fn build(m: &FramedModel, sigmas: &[Rational]) -> Result<Self, CliError> {
        let chambers = (m.rank() == 2 && m.degree() < 0)
            .then(|| build_chambers(m.degree(), m.ctx().genus))
            .transpose()?;
        let sigmas: Vec<Rational> = if !sigmas.is_empty() {
            if let Some(bad) = sigmas.iter().find(|s| !is_positive(s)) {
                return Err(CliError::InvalidInput(format!("sigma must be positive, got {bad}")));
            }
            sigmas.to_vec()
        } else if let Some(cd) = &chambers {
            let mut all: Vec<Rational> = cd.representatives().cloned().collect();
            all.extend(cd.walls.iter().map(|&w| integer(w)));
            all.sort();
            all
        } else {
            return Err(CliError::InvalidInput(
                "no chamber structure for this model; pass --sigma".into(),
            ));
        };
        let entries = sigmas
            .iter()
            .map(|s| sigma_entry(m, s, chambers.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            rank: m.rank(),
            degree: m.degree(),
            genus: m.ctx().genus,
            sigma_bound: m.sigma_upper_bound(),
            sigma_max: m.sigma_max(false),
            sigma_max_pair: m.sigma_max(true),
            final_chamber_stable: m.typ().framing_nonzero.then(|| m.final_chamber_stable()),
            oriented_fm: Verdicts {
                semistable: m.is_oriented_semistable(false),
                stable: m.is_oriented_stable(false),
            },
            oriented_pair: Verdicts {
                semistable: m.is_oriented_semistable(true),
                stable: m.is_oriented_stable(true),
            },
            entries,
        })
    }

    /// Equivalences that were checkable (rank 2, closure axiom satisfied) and
    /// failed.
    pub fn failures(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter_map(|e| {
                let eq = e.equivalence.as_ref()?;
                (!eq.holds()).then(|| format!("pair/framed-module verdicts differ at σ={}, witness {:?}", e.sigma, eq.witness))
            })
            .collect()
    }
}

fn sigma_entry(m: &FramedModel, s: &Rational, cd: Option<&ChamberData>) -> Result<SigmaEntry, CliError> {
    let mut notes = Vec::new();
    let location = cd.map(|cd| chamber_of(s, cd)).transpose()?;
    let (max_destabilizer, hn) = match (m.max_destabilizer(s), m.hn_filtration(s)) {
        (Ok(md), Ok(hn)) => (md.map(|f| f.id.clone()), Some(hn)),
        (Err(e), _) | (_, Err(e)) => {
            notes.push(e.to_string());
            (None, None)
        }
    };
    let hn_slopes = hn.as_ref().map(|h| h.slopes(s)).unwrap_or_default();
    let equivalence = if m.rank() == 2 {
        match verify_rank2_equivalences(m, s) {
            Ok(r) => Some(r),
            Err(StabilityError::AxiomViolated(why)) => {
                notes.push(format!("equivalence not asserted: {why}"));
                notes.push(format!("unchecked comparison: {}", summary(&compare_rank2_verdicts(m, s))));
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    Ok(SigmaEntry {
        sigma: s.clone(),
        location,
        fm: Verdicts {
            semistable: m.is_fm_semistable(s),
            stable: m.is_fm_stable(s),
        },
        pair: Verdicts {
            semistable: m.is_pair_semistable(s),
            stable: m.is_pair_stable(s),
        },
        max_destabilizer,
        hn,
        hn_slopes,
        equivalence,
        notes,
    })
}

fn summary(r: &EquivalenceReport) -> String {
    if r.holds() {
        "verdicts agree".into()
    } else {
        format!("verdicts differ, witness {:?}", r.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub grid: Grid,
    pub seed: u64,
    pub cells: Vec<CellReport>,
    pub suite: SuiteReport,
}

impl VerifyReport {
    /// Grid cells run on the ambient rayon pool; results keep grid order.
    pub fn build(grid: Grid, seed: u64, models: usize) -> Self {
        let (cells, suite) = rayon::join(
            || grid.cells().par_iter().map(|&(d, g)| verify_cell(d, g)).collect(),
            || stability_suite(seed, models),
        );
        Self { grid, seed, cells, suite }
    }

    pub fn passed(&self) -> bool {
        self.cells.iter().all(CellReport::passed) && self.suite.passed()
    }

    pub fn failures(&self) -> Vec<String> {
        self.cells
            .iter()
            .flat_map(|c| c.failures.iter().cloned())
            .chain(self.suite.failures.iter().cloned())
            .collect()
    }
}
