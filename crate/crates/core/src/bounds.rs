//! Exact integer arithmetic for the `19n/7 − 18/7` edge bound and its companions.
//!
//! Every comparison is made after clearing denominators; nothing here touches
//! floating point.

use serde::Serialize;
use thiserror::Error;

use crate::graph::DegreeHistogram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("vertex count must be at least 1")]
    ZeroVertices,
    #[error("degree sum {0} is odd")]
    OddDegreeSum(usize),
}

/// `7m` against `19n − 18`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub n: u64,
    pub m: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub satisfied: bool,
    pub tight: bool,
}

pub fn turan_verdict(n: u64, m: u64) -> Result<BoundVerdict, BoundsError> {
    if n == 0 {
        return Err(BoundsError::ZeroVertices);
    }
    let lhs = 7 * m;
    let rhs = 19 * n - 18;
    Ok(BoundVerdict { n, m, lhs, rhs, satisfied: lhs <= rhs, tight: lhs == rhs })
}

/// Largest edge count allowed by the bound: `⌊(19n − 18)/7⌋`.
pub fn turan_edge_cap(n: u64) -> Result<u64, BoundsError> {
    if n == 0 {
        return Err(BoundsError::ZeroVertices);
    }
    Ok((19 * n - 18) / 7)
}

/// Edges of a maximal planar graph: `3n − 6` for `n ≥ 3`, otherwise `K_n`.
pub fn max_planar_edges(n: u64) -> Result<u64, BoundsError> {
    match n {
        0 => Err(BoundsError::ZeroVertices),
        1 => Ok(0),
        2 => Ok(1),
        _ => Ok(3 * n - 6),
    }
}

/// Both sides of the two crossover inequalities at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossoverRow {
    pub n: i64,
    /// `21n − 42`, i.e. `7(3n − 6)`.
    pub planar_lhs: i64,
    /// `19n − 18`.
    pub bound_rhs: i64,
    pub planar_within_bound: bool,
    /// `35n`, i.e. `14 · 5n/2`.
    pub degree_cap_lhs: i64,
    /// `38n − 36`, i.e. `2(19n − 18)`.
    pub degree_cap_rhs: i64,
    pub degree_cap_within_bound: bool,
}

impl CrossoverRow {
    pub fn at(n: i64) -> Self {
        let planar_lhs = 21 * n - 42;
        let bound_rhs = 19 * n - 18;
        let degree_cap_lhs = 35 * n;
        let degree_cap_rhs = 38 * n - 36;
        CrossoverRow {
            n,
            planar_lhs,
            bound_rhs,
            planar_within_bound: planar_lhs <= bound_rhs,
            degree_cap_lhs,
            degree_cap_rhs,
            degree_cap_within_bound: degree_cap_lhs <= degree_cap_rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossoverReport {
    pub range: (i64, i64),
    /// `3n − 6 ≤ 19n/7 − 18/7` held exactly for `n ≤ 12` across the range.
    pub planar_side_exact: bool,
    /// `5n/2 ≤ 19n/7 − 18/7` held exactly for `n ≥ 12` across the range.
    pub degree_cap_side_exact: bool,
    pub samples: Vec<CrossoverRow>,
}

pub const CROSSOVER: i64 = 12;

/// Checks both crossovers at `n = 12` over `n = 1..=1000`.
pub fn crossover_facts() -> CrossoverReport {
    let (lo, hi) = (1, 1000);
    let mut planar_side_exact = true;
    let mut degree_cap_side_exact = true;
    for n in lo..=hi {
        let row = CrossoverRow::at(n);
        planar_side_exact &= row.planar_within_bound == (n <= CROSSOVER);
        degree_cap_side_exact &= row.degree_cap_within_bound == (n >= CROSSOVER);
    }
    CrossoverReport {
        range: (lo, hi),
        planar_side_exact,
        degree_cap_side_exact,
        samples: [CROSSOVER - 1, CROSSOVER, CROSSOVER + 1].into_iter().map(CrossoverRow::at).collect(),
    }
}

/// Edge count from a degree histogram, two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeSumIdentity {
    pub m_from_sum: u64,
    /// `(5n + n₆ − n₄ − 2n₃, 2)` when all degrees lie in `3..=6`.
    pub closed_form: Option<(i64, i64)>,
    pub forms_agree: Option<bool>,
    /// `n₆ ≤ n₃ + n₄`.
    pub six_dominated: Option<bool>,
    /// `2m ≤ 5n`.
    pub within_five_halves: bool,
    /// `n₆ ≤ n₃ + n₄ ⇒ 2m ≤ 5n` on this histogram.
    pub implication_holds: Option<bool>,
}

pub fn degree_sum_identity(h: &DegreeHistogram) -> Result<DegreeSumIdentity, BoundsError> {
    let sum = h.degree_sum();
    if sum % 2 == 1 {
        return Err(BoundsError::OddDegreeSum(sum));
    }
    let m = (sum / 2) as u64;
    let n = h.vertex_count() as i64;
    let in_range = h.counts().keys().all(|d| (3..=6).contains(d));
    let (n3, n4, n6) = (h.count(3) as i64, h.count(4) as i64, h.count(6) as i64);
    let closed_form = in_range.then_some((5 * n + n6 - n4 - 2 * n3, 2));
    let six_dominated = in_range.then_some(n6 <= n3 + n4);
    let within_five_halves = 2 * m as i64 <= 5 * n;
    Ok(DegreeSumIdentity {
        m_from_sum: m,
        closed_form,
        forms_agree: closed_form.map(|(num, den)| num == den * m as i64),
        six_dominated,
        within_five_halves,
        implication_holds: six_dominated.map(|d| !d || within_five_halves),
    })
}
