//! Exhaustive checks of the structural lemmas on small host graphs.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::Serialize;

use super::{enumerate, EnumOptions, EnumerateError, EnumerationConstraints};
use crate::bounds::{max_planar_edges, turan_edge_cap, turan_verdict, BoundsError};
use crate::forbid::DoubleStar;
use crate::graph::Graph;
use crate::structure::{
    check_claim_degree4, degree6_common_neighbor_free, degree6_set_independent, hypothesis_class, FeatureKind,
};

/// The four degree-6 configurations, in the order reports list them.
pub const LEMMA_FEATURES: [FeatureKind; 4] = [
    FeatureKind::KLEdge(6, 6),
    FeatureKind::KLSPath(6, 5, 6),
    FeatureKind::KLSPath(6, 4, 6),
    FeatureKind::KLSPath(6, 3, 6),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTally {
    pub feature: String,
    pub graphs: u64,
    pub max_edges: Option<usize>,
    /// Graphs in the class with `7m > 19n − 18`.
    pub violations: u64,
}

impl ClassTally {
    fn new(f: FeatureKind) -> Self {
        ClassTally { feature: f.to_string(), graphs: 0, max_edges: None, violations: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Row {
    pub n: usize,
    /// Hosts with `Δ = 6`.
    pub hosts: u64,
    pub classes: Vec<ClassTally>,
    /// Hosts with a 6-5-6 path but no 6-6 edge.
    pub s656_without_66: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Report {
    pub n_max: usize,
    pub rows: Vec<Lemma3Row>,
    pub violations: u64,
    pub s656_without_66: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimDegree4Row {
    pub n: usize,
    /// Hosts meeting the claim's hypotheses.
    pub hosts: u64,
    pub degree6_vertices: u64,
    /// Degree-6 vertices with no neighbour of degree at most 4.
    pub violations: u64,
    /// Hosts with `n₆ > n₃ + n₄`.
    pub six_dominated_failures: u64,
    /// Hosts whose degree-6 vertices are adjacent or share a neighbour.
    pub separation_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimDegree4Report {
    pub n_max: usize,
    pub rows: Vec<ClaimDegree4Row>,
    pub violations: u64,
    pub six_dominated_holds: bool,
    pub exhaustive: bool,
}

/// Smallest order with a host: `δ ≥ 3` needs four vertices.
const FIRST_HOST_ORDER: usize = 4;

fn lemma3_row(n: usize) -> Lemma3Row {
    Lemma3Row { n, hosts: 0, classes: LEMMA_FEATURES.iter().map(|&f| ClassTally::new(f)).collect(), s656_without_66: 0 }
}

fn degree4_row(n: usize) -> ClaimDegree4Row {
    ClaimDegree4Row {
        n,
        hosts: 0,
        degree6_vertices: 0,
        violations: 0,
        six_dominated_failures: 0,
        separation_failures: 0,
    }
}

fn tally(g: &Graph, lemma: &mut Lemma3Row, claim: &mut ClaimDegree4Row) {
    if g.max_degree() != 6 {
        return;
    }
    let flags = hypothesis_class(g);
    lemma.hosts += 1;
    let within = turan_verdict(g.n() as u64, g.m() as u64).map(|v| v.satisfied).unwrap_or(false);
    let present = [flags.has_66_edge, flags.has_656_path, flags.has_646_path, flags.has_636_path];
    for (t, &p) in lemma.classes.iter_mut().zip(&present) {
        if p {
            t.graphs += 1;
            t.max_edges = t.max_edges.max(Some(g.m()));
            t.violations += u64::from(!within);
        }
    }
    if flags.has_656_path && !flags.has_66_edge {
        lemma.s656_without_66 += 1;
    }
    if flags.has_any_lemma_feature() {
        return;
    }
    // hosts are S_{2,5}-free by construction, so the claim's hypotheses hold
    claim.hosts += 1;
    for v in check_claim_degree4(g) {
        claim.degree6_vertices += 1;
        claim.violations += u64::from(!v.has_low_neighbor);
    }
    let h = g.degree_histogram();
    if h.count(6) > h.count(3) + h.count(4) {
        claim.six_dominated_failures += 1;
    }
    if !degree6_set_independent(g) || !degree6_common_neighbor_free(g) {
        claim.separation_failures += 1;
    }
}

/// Both lemma checks from one enumeration per order.
pub fn verify_hypothesis_classes(
    n_max: usize,
    opts: &EnumOptions,
) -> Result<(Lemma3Report, ClaimDegree4Report), EnumerateError> {
    let mut lemma_rows = Vec::new();
    let mut claim_rows = Vec::new();
    let mut exhaustive = true;
    for n in FIRST_HOST_ORDER..=n_max {
        let acc = Mutex::new((lemma3_row(n), degree4_row(n)));
        let summary = enumerate(&EnumerationConstraints::lemma_hosts(n), opts, |g| {
            if g.max_degree() == 6 {
                let mut guard = acc.lock().unwrap();
                let (l, c) = &mut *guard;
                tally(g, l, c);
            }
        })?;
        exhaustive &= summary.exhaustive;
        let (l, c) = acc.into_inner().unwrap();
        lemma_rows.push(l);
        claim_rows.push(c);
    }
    let lemma = Lemma3Report {
        n_max,
        violations: lemma_rows.iter().flat_map(|r| &r.classes).map(|t| t.violations).sum(),
        s656_without_66: lemma_rows.iter().map(|r| r.s656_without_66).sum(),
        rows: lemma_rows,
        exhaustive,
    };
    let claim = ClaimDegree4Report {
        n_max,
        violations: claim_rows.iter().map(|r| r.violations).sum(),
        six_dominated_holds: claim_rows.iter().all(|r| r.six_dominated_failures == 0),
        rows: claim_rows,
        exhaustive,
    };
    Ok((lemma, claim))
}

/// The four degree-6 classes against `7m ≤ 19n − 18` on all hosts up to `n_max`.
pub fn verify_lemma3_classes(n_max: usize, opts: &EnumOptions) -> Result<Lemma3Report, EnumerateError> {
    verify_hypothesis_classes(n_max, opts).map(|(l, _)| l)
}

/// Every degree-6 vertex has a neighbour of degree 3 or 4, on all hosts
/// without the four configurations up to `n_max`.
pub fn verify_claim_degree4(n_max: usize, opts: &EnumOptions) -> Result<ClaimDegree4Report, EnumerateError> {
    verify_hypothesis_classes(n_max, opts).map(|(_, c)| c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SmallNRow {
    pub n: u64,
    pub planar_max: u64,
    pub cap: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmallNReport {
    pub rows: Vec<SmallNRow>,
    /// `3n − 6 ≤ ⌊(19n − 18)/7⌋` for every `3 ≤ n ≤ 12`.
    pub holds_through_12: bool,
    pub fails_at_13: bool,
}

/// Below the crossover every planar graph already meets the bound. Rows run
/// over `1..=n_max`.
pub fn verify_small_n_claim(n_max: u64) -> Result<SmallNReport, BoundsError> {
    let row = |n: u64| -> Result<SmallNRow, BoundsError> {
        let planar_max = max_planar_edges(n)?;
        let cap = turan_edge_cap(n)?;
        Ok(SmallNRow { n, planar_max, cap, holds: planar_max <= cap })
    };
    let rows = (1..=n_max).map(row).collect::<Result<Vec<_>, _>>()?;
    let holds_through_12 = (3..=12).map(row).collect::<Result<Vec<_>, _>>()?.iter().all(|r| r.holds);
    let fails_at_13 = !row(13)?.holds;
    Ok(SmallNReport { rows, holds_through_12, fails_at_13 })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleWindowReport {
    pub n_max: usize,
    pub graphs: u64,
    /// Observed `(min, max)` common-neighbour count per end-degree pair.
    pub observed: BTreeMap<String, (usize, usize)>,
    pub violations: u64,
    pub exhaustive: bool,
}

/// Allowed common-neighbour counts on an `S_{2,5}`-free edge with end degrees 6 and `d`.
pub fn triangle_window(d: usize) -> Option<(usize, usize)> {
    match d {
        5 => Some((3, 4)),
        4 => Some((2, 3)),
        3 => Some((1, 2)),
        _ => None,
    }
}

/// Checks [`triangle_window`] on every edge of every planar `S_{2,5}`-free graph up to `n_max`.
pub fn verify_triangle_window(n_max: usize, opts: &EnumOptions) -> Result<TriangleWindowReport, EnumerateError> {
    let acc = Mutex::new((0u64, BTreeMap::<String, (usize, usize)>::new(), 0u64));
    let mut exhaustive = true;
    for n in 1..=n_max {
        let c = EnumerationConstraints {
            require_planar: true,
            forbid: vec![DoubleStar::S25],
            ..EnumerationConstraints::new(n)
        };
        let summary = enumerate(&c, opts, |g| {
            let mut local = Vec::new();
            for (u, v) in g.edges() {
                let (du, dv) = (g.degree(u), g.degree(v));
                let other = match (du, dv) {
                    (6, d) | (d, 6) => d,
                    _ => continue,
                };
                if let Some(window) = triangle_window(other) {
                    let t = (g.row(u) & g.row(v)).count_ones() as usize;
                    local.push((format!("6-{other}"), t, window));
                }
            }
            let mut guard = acc.lock().unwrap();
            guard.0 += 1;
            for (key, t, (lo, hi)) in local {
                let e = guard.1.entry(key).or_insert((t, t));
                *e = (e.0.min(t), e.1.max(t));
                guard.2 += u64::from(t < lo || t > hi);
            }
        })?;
        exhaustive &= summary.exhaustive;
    }
    let (graphs, observed, violations) = acc.into_inner().unwrap();
    Ok(TriangleWindowReport { n_max, graphs, observed, violations, exhaustive })
}
