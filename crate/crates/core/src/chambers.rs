//! Walls, chambers and flip loci for rank-2 framed modules of degree `d < 0`
//! framed by the trivial line bundle.
//!
//! The moduli space `FM^i` is the σ-stable locus for σ in
//! `(max{0, 2i+d}, 2i+2+d)`, with `⌊−d/2⌋ ≤ i ≤ −d−1`. Walls are the values
//! `η_i = max{0, 2i+d}` that fall strictly inside `(0, −d)`; moving across the
//! wall `η_{i+1}` replaces the flip locus `ℙW_i^−` of `FM^i` by `ℙW_i^+`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{integer, rational, serde_str, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChamberError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index i={i} outside the flip range {lo}..={hi} for d={d}")]
    OutOfRange { i: i64, d: i64, lo: i64, hi: i64 },
}

/// `max{0, 2i+d}`
pub fn eta(i: i64, d: i64) -> i64 {
    (2 * i + d).max(0)
}

/// `−d + 2g − 2`, the dimension of every `FM^i`.
pub fn moduli_dim(d: i64, g: i64) -> i64 {
    -d + 2 * g - 2
}

/// Smallest chamber index `⌊−d/2 − 1⌋ + 1`.
pub fn first_index(d: i64) -> i64 {
    (-d).div_euclid(2)
}

/// Terminal chamber index `−d − 1`.
pub fn last_index(d: i64) -> i64 {
    -d - 1
}

pub(crate) fn check_domain(d: i64, g: i64) -> Result<(), ChamberError> {
    if d >= 0 {
        return Err(ChamberError::InvalidInput(format!("degree must be negative, got d={d}")));
    }
    if g < 2 {
        return Err(ChamberError::InvalidInput(format!("genus must be at least 2, got g={g}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    /// Position from the left, starting at 0.
    pub position: usize,
    /// Index `i` of the moduli space `FM^i` realized on this chamber.
    pub fm_index: i64,
    pub lower: i64,
    pub upper: i64,
    /// Only the last chamber `(σ'_t, −d]` includes its right endpoint.
    pub right_closed: bool,
    #[serde(with = "serde_str")]
    pub representative: Rational,
}

impl Chamber {
    pub fn contains(&self, sigma: &Rational) -> bool {
        let lo = integer(self.lower);
        let hi = integer(self.upper);
        *sigma > lo && (*sigma < hi || (self.right_closed && *sigma == hi))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberData {
    pub d: i64,
    pub g: i64,
    /// `σ'_1 < … < σ'_t`
    pub walls: Vec<i64>,
    pub chambers: Vec<Chamber>,
    /// Inclusive range of chamber indices `i`.
    pub index_range: (i64, i64),
}

impl ChamberData {
    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn first_wall(&self) -> Option<i64> {
        self.walls.first().copied()
    }

    pub fn last_wall(&self) -> Option<i64> {
        self.walls.last().copied()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.chambers.iter().map(|c| &c.representative)
    }

    /// Flip data at the wall on the right of each chamber (none for the last).
    pub fn flip_loci(&self) -> Vec<FlipLocusData> {
        (self.index_range.0..self.index_range.1)
            .map(|i| flip_locus(i, self.d, self.g).expect("index inside flip range"))
            .collect()
    }
}

pub fn build_chambers(d: i64, g: i64) -> Result<ChamberData, ChamberError> {
    check_domain(d, g)?;
    let lo = first_index(d);
    let hi = last_index(d);
    let mut walls: Vec<i64> = (lo + 1..=hi).map(|i| eta(i, d)).collect();
    walls.sort_unstable();
    walls.dedup();

    let mut bounds = Vec::with_capacity(walls.len() + 2);
    bounds.push(0);
    bounds.extend(&walls);
    bounds.push(-d);
    let n = bounds.len() - 1;
    let chambers = (0..n)
        .map(|p| Chamber {
            position: p,
            fm_index: lo + p as i64,
            lower: bounds[p],
            upper: bounds[p + 1],
            right_closed: p + 1 == n,
            representative: rational(bounds[p] + bounds[p + 1], 2),
        })
        .collect();
    Ok(ChamberData {
        d,
        g,
        walls,
        chambers,
        index_range: (lo, hi),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Location {
    /// Chamber by position (0 is the chamber adjacent to σ = 0).
    Chamber(usize),
    Wall(i64),
    /// σ > −d: no σ-semistable framed module exists.
    Empty,
}

pub fn chamber_of(sigma: &Rational, cd: &ChamberData) -> Result<Location, ChamberError> {
    if *sigma <= integer(0) {
        return Err(ChamberError::InvalidInput(format!("sigma must be positive, got {sigma}")));
    }
    if *sigma > integer(-cd.d) {
        return Ok(Location::Empty);
    }
    if let Some(&w) = cd.walls.iter().find(|&&w| integer(w) == *sigma) {
        return Ok(Location::Wall(w));
    }
    cd.chambers
        .iter()
        .find(|c| c.contains(sigma))
        .map(|c| Location::Chamber(c.position))
        .ok_or_else(|| ChamberError::InvalidInput(format!("sigma {sigma} not located")))
}

/// Numerical data of the flip loci `ℙW_i^±` over `Pic^{i+1}X × S^{−d−i−1}X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipLocusData {
    pub i: i64,
    pub rank_minus: i64,
    pub rank_plus: i64,
    /// `g + (−d−i−1)`
    pub base_dim: i64,
    pub dim_pw_minus: i64,
    pub dim_pw_plus: i64,
    pub codim_minus: i64,
    pub codim_plus: i64,
}

pub fn flip_locus(i: i64, d: i64, g: i64) -> Result<FlipLocusData, ChamberError> {
    check_domain(d, g)?;
    let (lo, hi) = (first_index(d), -d - 2);
    if i < lo || i > hi {
        return Err(ChamberError::OutOfRange { i, d, lo, hi });
    }
    let rank_minus = d + g + 2 * i + 1;
    let rank_plus = -d - i - 1;
    let base_dim = g + (-d - i - 1);
    let dim_pw_minus = base_dim + rank_minus - 1;
    let dim_pw_plus = base_dim + rank_plus - 1;
    let dim = moduli_dim(d, g);
    Ok(FlipLocusData {
        i,
        rank_minus,
        rank_plus,
        base_dim,
        dim_pw_minus,
        dim_pw_plus,
        codim_minus: dim - dim_pw_minus,
        codim_plus: dim - dim_pw_plus,
    })
}
