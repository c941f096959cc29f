//! Consistency sweeps over a `(g, d)` grid and over seeded random models.

use serde::{Deserialize, Serialize};

use crate::betti::BettiReport;
use crate::chambers::{build_chambers, chamber_of, first_index, moduli_dim, Location};
use crate::exactpoly::{integer, Rational};
use crate::stability::sample::ModelSampler;
use crate::stability::{verify_rank2_equivalences, FramedModel, StabilityError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub g_max: i64,
    pub d_min: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Self { g_max: 5, d_min: -15 }
    }
}

impl Grid {
    /// Cells `(d, g)` with `2 ≤ g ≤ g_max`, `d_min ≤ d ≤ −1`, ordered by g then
    /// descending d.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        (2..=self.g_max)
            .flat_map(|g| (self.d_min..=-1).rev().map(move |d| (d, g)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub d: i64,
    pub g: i64,
    pub walls: usize,
    pub chambers: usize,
    pub failures: Vec<String>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Wall structure, flip-locus numerics and every Betti identity for one cell.
pub fn verify_cell(d: i64, g: i64) -> CellReport {
    let mut failures = Vec::new();
    let mut fail = |what: String| failures.push(format!("{what} at (d={d}, g={g})"));
    let cd = match build_chambers(d, g) {
        Ok(cd) => cd,
        Err(e) => {
            fail(e.to_string());
            return CellReport {
                d,
                g,
                walls: 0,
                chambers: 0,
                failures,
            };
        }
    };
    if let Some(last) = cd.last_wall() {
        if last != -d - 2 {
            fail(format!("last wall {last} != -d-2"));
        }
        let expected_first = if d % 2 != 0 { 1 } else { 2 };
        if cd.first_wall() != Some(expected_first) {
            fail(format!("first wall {:?} != {expected_first}", cd.first_wall()));
        }
    }
    if chamber_of(&(integer(-d) + Rational::new(1.into(), 2.into())), &cd).ok() != Some(Location::Empty) {
        fail("σ > -d is not empty".to_string());
    }
    for f in cd.flip_loci() {
        if f.codim_minus != f.rank_plus || f.codim_plus != f.rank_minus {
            fail(format!("codim/rank identity at i={}", f.i));
        }
        let terminal = f.i == -d - 2;
        if terminal && (f.codim_minus != 1 || f.dim_pw_minus != -d + 2 * g - 3) {
            fail(format!("terminal flip numerics at i={}", f.i));
        }
        if !terminal && (f.codim_minus < 2 || f.codim_plus < 2) {
            fail(format!("codim below 2 at i={}", f.i));
        }
        if f.i < first_index(d) || f.dim_pw_minus > moduli_dim(d, g) {
            fail(format!("flip locus out of range at i={}", f.i));
        }
    }
    match BettiReport::build(d, g, None) {
        Ok(r) => r.failures().into_iter().for_each(|f| failures.push(f)),
        Err(e) => failures.push(format!("{e} at (d={d}, g={g})")),
    }
    CellReport {
        d,
        g,
        walls: cd.wall_count(),
        chambers: cd.chambers.len(),
        failures,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub models: usize,
    pub evaluations: usize,
    /// Models rejected as ambiguous lattices (incomparable exact ties).
    pub ambiguous: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_model(m: &FramedModel, sigmas: &[Rational], tag: &str, rep: &mut SuiteReport) {
    let mut fail = |msg: String| rep.failures.push(format!("{tag}: {msg}"));
    for s in sigmas {
        rep.evaluations += 1;
        let hn = match m.hn_filtration(s) {
            Ok(hn) => hn,
            Err(StabilityError::AmbiguousModel { .. }) => {
                rep.ambiguous += 1;
                continue;
            }
            Err(e) => {
                fail(format!("σ={s}: {e}"));
                continue;
            }
        };
        let slopes = hn.slopes(s);
        if !slopes.windows(2).all(|w| w[0] > w[1]) {
            fail(format!("HN slopes not decreasing at σ={s}"));
        }
        let first = m.max_destabilizer(s).ok().flatten();
        let ambient = m.ambient_slope(s);
        if let Some(f) = first {
            let k = m.index_of(&f.id).expect("destabilizer is listed");
            let top = m.sub_slope(k, s);
            if (0..m.subs().len()).any(|j| m.sub_slope(j, s) > top) {
                fail(format!("max destabilizer {} not maximal at σ={s}", f.id));
            }
            if top > ambient && hn.steps.first() != Some(&f.id) {
                fail(format!("HN does not start at {} at σ={s}", f.id));
            }
        } else if !hn.is_trivial() {
            fail(format!("nontrivial HN without destabilizer at σ={s}"));
        }
        if m.is_fm_semistable(s) {
            if let Some(b) = m.sigma_upper_bound() {
                if *s > b {
                    fail(format!("semistable at σ={s} above bound {b}"));
                }
            }
        }
    }
    if m.typ().framing_nonzero {
        let beyond = m
            .subs()
            .iter()
            .filter(|f| !f.fr)
            .map(|f| integer(m.degree()) - integer(m.rank()) * f.slope())
            .max()
            .unwrap_or_else(|| integer(0))
            .max(integer(0))
            + integer(1);
        let big = m
            .subs()
            .iter()
            .filter(|f| f.fr)
            .map(|f| {
                (integer(f.degree * m.rank() - m.degree() * f.rank)) / integer(m.rank() - f.rank)
            })
            .fold(beyond, |a, b| a.max(b + integer(1)));
        if m.final_chamber_stable() != m.is_fm_stable(&big) {
            fail(format!("final-chamber verdict disagrees with stability at σ={big}"));
        }
    }
}

/// Seeded random models through every stability property, `n` rank-2 and
/// `n / 4` chain models.
pub fn stability_suite(seed: u64, n: usize) -> SuiteReport {
    let mut sampler = ModelSampler::new(seed);
    let mut rep = SuiteReport {
        seed,
        ..Default::default()
    };
    for k in 0..n {
        let m = sampler.rank2();
        let cd = build_chambers(m.degree(), m.ctx().genus).expect("sampled degree is negative");
        let mut sigmas: Vec<Rational> = cd.representatives().cloned().collect();
        sigmas.extend(cd.walls.iter().map(|&w| integer(w)));
        let tag = format!("rank-2 model #{k} (seed {seed})");
        check_model(&m, &sigmas, &tag, &mut rep);
        for s in &sigmas {
            let closed = m.clone().close_under_constraint(s);
            match verify_rank2_equivalences(&closed, s) {
                Ok(r) if r.holds() => {}
                Ok(r) => rep
                    .failures
                    .push(format!("{tag}: equivalence fails at σ={s}, witness {:?}", r.witness)),
                Err(e) => rep.failures.push(format!("{tag}: {e}")),
            }
        }
        rep.models += 1;
    }
    for k in 0..n / 4 {
        let m = sampler.chain();
        let sigmas: Vec<Rational> = (0..4).map(|_| sampler.sigma()).collect();
        check_model(&m, &sigmas, &format!("chain model #{k} (seed {seed})"), &mut rep);
        rep.models += 1;
    }
    rep
}
