//! Seeded random subobject lattices for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CurveContext, FramedModel, FramedType, SplitDescriptor, SubobjectData};
use crate::exactpoly::{rational, Rational};

pub struct ModelSampler {
    rng: ChaCha8Rng,
}

impl ModelSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A positive rational `p/q` with `p ≤ 40`, `q ≤ 4`.
    pub fn sigma(&mut self) -> Rational {
        let p = self.rng.gen_range(1..=40);
        let q = self.rng.gen_range(1..=4);
        rational(p, q)
    }

    /// Rank 2, `d ∈ [−12, −1]`, trivial framing target, ψ ≠ 0.
    ///
    /// At most one line lies in `ker ψ`; when present the model may be split,
    /// in which case every other line has degree at most that of both summands.
    pub fn rank2(&mut self) -> FramedModel {
        let rng = &mut self.rng;
        let d: i64 = rng.gen_range(-12..=-1);
        let genus = rng.gen_range(2..=4);
        let mut subs = Vec::new();
        let mut split = None;
        let mut cap = 2;
        if rng.gen_bool(0.7) {
            let a_k = rng.gen_range(d..=d.div_euclid(2) + 3);
            subs.push(SubobjectData::new("K", 1, a_k, false).phi_invariant(rng.gen_bool(0.7)));
            if rng.gen_bool(0.2) {
                subs.push(SubobjectData::new("C", 1, d - a_k, true).phi_invariant(rng.gen_bool(0.7)));
                split = Some(SplitDescriptor {
                    kernel: "K".into(),
                    complement: "C".into(),
                });
                cap = a_k.min(d - a_k);
            }
        }
        let extra = rng.gen_range(0..=3);
        for n in 0..extra {
            let lo = (d - 2).min(cap);
            let deg = rng.gen_range(lo..=cap);
            subs.push(SubobjectData::new(format!("L{n}"), 1, deg, true).phi_invariant(rng.gen_bool(0.6)));
        }
        let typ = FramedType {
            rank: 2,
            degree: d,
            framing_nonzero: true,
            epsilon_nonzero: rng.gen_bool(0.5),
            delta_iso: rng.gen_bool(0.7),
        };
        let ctx = CurveContext {
            genus,
            frame_degree: 0,
        };
        FramedModel::new(ctx, typ, subs, split).expect("sampled rank-2 model is valid")
    }

    /// Rank 3 to 5 with a nested chain of subobjects whose bottom part lies in
    /// `ker ψ`, plus possibly one line off the chain. About one model in ten
    /// has ψ = 0.
    pub fn chain(&mut self) -> FramedModel {
        let rng = &mut self.rng;
        let r: i64 = rng.gen_range(3..=5);
        let d: i64 = rng.gen_range(-10..=4);
        let frame_degree: i64 = rng.gen_range(-2..=2);
        let psi = !rng.gen_bool(0.1);
        let ranks: Vec<i64> = (1..r).filter(|_| rng.gen_bool(0.75)).collect();
        let n_kernel = if psi { rng.gen_range(0..=ranks.len()) } else { ranks.len() };
        let mut subs: Vec<SubobjectData> = ranks
            .iter()
            .enumerate()
            .map(|(j, &rk)| {
                let deg = rng.gen_range(-8..=4);
                let mut s = SubobjectData::new(format!("E{j}"), rk, deg, j >= n_kernel).phi_invariant(rng.gen_bool(0.7));
                if j + 1 < ranks.len() {
                    s = s.inside(format!("E{}", j + 1));
                }
                s
            })
            .collect();
        if n_kernel > 0 {
            // E/ker ψ maps into the framing target, so deg ker ψ ≥ d − deg ℋ
            let top = &mut subs[n_kernel - 1];
            top.degree = top.degree.max(d - frame_degree);
        }
        if psi && rng.gen_bool(0.3) {
            let deg = rng.gen_range(-8..=4);
            subs.push(SubobjectData::new("M", 1, deg, true).phi_invariant(rng.gen_bool(0.7)));
        }
        let typ = FramedType {
            rank: r,
            degree: d,
            framing_nonzero: psi,
            epsilon_nonzero: rng.gen_bool(0.5),
            delta_iso: rng.gen_bool(0.7),
        };
        let ctx = CurveContext {
            genus: rng.gen_range(2..=4),
            frame_degree,
        };
        FramedModel::new(ctx, typ, subs, None).expect("sampled chain model is valid")
    }
}
