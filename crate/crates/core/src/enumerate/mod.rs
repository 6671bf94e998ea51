//! Isomorphism-free generation of constrained graphs by canonical augmentation.
//!
//! Graphs grow one vertex at a time. A child `G = P + v` is kept only when `v`
//! lies in the automorphism orbit of `G`'s canonical deletion vertex: the
//! vertex at canonical position 0, which always has minimum degree. Children
//! of one parent that are isomorphic differ by an automorphism of the parent,
//! so they are deduplicated locally, and only when the parent has a
//! non-trivial automorphism group.
//!
//! Hereditary constraints (planarity, double-star freeness, maximum degree)
//! prune whole subtrees. The minimum degree is also pruned on: a vertex that
//! cannot reach it with the vertices still to come kills its subtree. All
//! other constraints are checked on complete graphs only.

mod extremal;
mod verify;

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{
    canonical_form, canonical_labeling, canonical_labeling_from, refined_degree_partition, CanonicalForm,
};
use crate::forbid::{creates_double_star_at, is_free_of, DoubleStar};
use crate::graph::{Graph, GraphError, MAX_VERTICES};
use crate::planarity::is_planar;
use crate::structure::FeatureKind;

pub use crate::witness::icosahedron as build_icosahedron;
pub use extremal::{
    ex_search, min_deletions_to_free, triangulation_oracle, triangulations, ExtremalRecord, SearchMode,
};
pub use verify::{
    verify_claim_degree4, verify_hypothesis_classes, verify_lemma3_classes, verify_small_n_claim,
    verify_triangle_window, ClaimDegree4Report, ClaimDegree4Row, ClassTally, Lemma3Report, Lemma3Row, SmallNReport,
    SmallNRow, TriangleWindowReport,
};

/// Environment variable overriding the default node budget.
pub const BUDGET_NODES_ENV: &str = "TURAN_BUDGET_NODES";
/// Environment variable overriding the default wall-clock budget, in seconds.
pub const BUDGET_SECONDS_ENV: &str = "TURAN_BUDGET_SECONDS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationConstraints {
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub require_connected: bool,
    pub require_bridgeless: bool,
    pub require_planar: bool,
    pub forbid: Vec<DoubleStar>,
    pub require_feature: Option<FeatureKind>,
    pub forbid_feature: Vec<FeatureKind>,
}

impl EnumerationConstraints {
    /// All graphs on `n` vertices.
    pub fn new(n: usize) -> Self {
        EnumerationConstraints {
            n,
            min_degree: 0,
            max_degree: MAX_VERTICES - 1,
            require_connected: false,
            require_bridgeless: false,
            require_planar: false,
            forbid: Vec::new(),
            require_feature: None,
            forbid_feature: Vec::new(),
        }
    }

    /// The host class of the degree-6 lemma: connected, bridgeless, planar,
    /// `S_{2,5}`-free, `3 ≤ d(v) ≤ 6`. Graphs with `Δ < 6` are still included.
    pub fn lemma_hosts(n: usize) -> Self {
        EnumerationConstraints {
            min_degree: 3,
            max_degree: 6,
            require_connected: true,
            require_bridgeless: true,
            require_planar: true,
            forbid: vec![DoubleStar::S25],
            ..EnumerationConstraints::new(n)
        }
    }

    pub fn validate(&self) -> Result<(), EnumerateError> {
        if self.n == 0 {
            return Err(EnumerateError::InvalidConstraints("n must be at least 1".into()));
        }
        if self.n > MAX_VERTICES {
            return Err(GraphError::Capacity(self.n).into());
        }
        if self.max_degree >= MAX_VERTICES {
            return Err(EnumerateError::InvalidConstraints(format!("max degree {} exceeds 63", self.max_degree)));
        }
        if self.min_degree > self.max_degree {
            return Err(EnumerateError::InvalidConstraints(format!(
                "min degree {} exceeds max degree {}",
                self.min_degree, self.max_degree
            )));
        }
        if let Some(p) = self.forbid.iter().find(|p| p.m == 0 || p.n == 0) {
            return Err(EnumerateError::InvalidConstraints(format!("pattern {p} needs positive leaf counts")));
        }
        Ok(())
    }

    /// Every constraint, checked on a finished graph.
    pub fn accepts(&self, g: &Graph) -> bool {
        g.n() == self.n
            && g.min_degree() >= self.min_degree
            && g.max_degree() <= self.max_degree
            && (!self.require_connected || g.component_count() == 1)
            && (!self.require_bridgeless || g.is_bridgeless())
            && self.forbid.iter().all(|&p| is_free_of(g, p))
            && self.require_feature.is_none_or(|f| f.present_in(g))
            && !self.forbid_feature.iter().any(|f| f.present_in(g))
            && (!self.require_planar || is_planar(g))
    }
}

/// Node and wall-clock limits. `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    /// Reads [`BUDGET_NODES_ENV`] and [`BUDGET_SECONDS_ENV`]; unset or
    /// unparsable values mean unlimited.
    pub fn from_env() -> Self {
        let nodes = std::env::var(BUDGET_NODES_ENV).ok().and_then(|s| s.trim().parse().ok());
        let seconds = std::env::var(BUDGET_SECONDS_ENV).ok().and_then(|s| s.trim().parse().ok());
        Budget { max_nodes: nodes, max_seconds: seconds }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumOptions {
    pub budget: Budget,
    /// Shard the search tree across rayon workers.
    pub parallel: bool,
    /// Apply hereditary constraints during generation. When off, every
    /// constraint is checked on complete graphs only.
    pub prune: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: Budget::unlimited(), parallel: true, prune: true }
    }
}

impl EnumOptions {
    pub fn sequential() -> Self {
        EnumOptions { parallel: false, ..EnumOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    /// Graphs passed to the visitor.
    pub visited: u64,
    /// Search-tree nodes expanded, across all levels.
    pub nodes: u64,
    /// False when a budget stopped the search early.
    pub exhaustive: bool,
}

/// Calls `visit` once per isomorphism class of graphs satisfying `c`.
///
/// With `opts.parallel` the visitor runs concurrently from several workers and
/// in no fixed order; callers must aggregate order-independently.
pub fn enumerate<F>(
    c: &EnumerationConstraints,
    opts: &EnumOptions,
    visit: F,
) -> Result<EnumerationSummary, EnumerateError>
where
    F: Fn(&Graph) + Sync,
{
    c.validate()?;
    let gen = Generator::new(c, opts, &visit, None);
    Ok(gen.run())
}

/// Subtree filter: returns false to abandon the subtree rooted at a graph.
pub(crate) type Cut<'a> = &'a (dyn Fn(&Graph) -> bool + Sync);

pub(crate) struct Generator<'a> {
    c: &'a EnumerationConstraints,
    opts: &'a EnumOptions,
    visit: &'a (dyn Fn(&Graph) + Sync),
    cut: Option<Cut<'a>>,
    dense_first: bool,
    nodes: AtomicU64,
    visited: AtomicU64,
    truncated: AtomicBool,
    start: Instant,
    deadline: Option<Duration>,
}

impl<'a> Generator<'a> {
    pub(crate) fn new(
        c: &'a EnumerationConstraints,
        opts: &'a EnumOptions,
        visit: &'a (dyn Fn(&Graph) + Sync),
        cut: Option<Cut<'a>>,
    ) -> Self {
        Generator {
            c,
            opts,
            visit,
            cut,
            dense_first: false,
            nodes: AtomicU64::new(0),
            visited: AtomicU64::new(0),
            truncated: AtomicBool::new(false),
            start: Instant::now(),
            deadline: opts.budget.max_seconds.map(Duration::from_secs_f64),
        }
    }

    /// Try neighbourhoods from largest to smallest, so dense graphs come first.
    pub(crate) fn dense_first(mut self) -> Self {
        self.dense_first = true;
        self
    }

    pub(crate) fn run(&self) -> EnumerationSummary {
        let root = Graph::empty(1).expect("one vertex fits");
        if self.opts.parallel && self.c.n > 4 {
            // expand sequentially down to the shard level, then fan out
            let shard_level = (self.c.n - 2).min(7);
            let mut frontier = vec![root];
            for _ in 1..shard_level {
                let mut next = Vec::new();
                for g in &frontier {
                    self.expand(g, &mut |child| next.push(child));
                }
                frontier = next;
            }
            frontier.par_iter().for_each(|g| self.descend(g));
        } else {
            self.descend(&root);
        }
        EnumerationSummary {
            visited: self.visited.load(Ordering::Relaxed),
            nodes: self.nodes.load(Ordering::Relaxed),
            exhaustive: !self.truncated.load(Ordering::Relaxed),
        }
    }

    fn out_of_budget(&self) -> bool {
        if self.truncated.load(Ordering::Relaxed) {
            return true;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.opts.budget.max_nodes.is_some_and(|max| count > max);
        let over_time = count.is_multiple_of(1024) && self.deadline.is_some_and(|d| self.start.elapsed() > d);
        if over_nodes || over_time {
            self.truncated.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn descend(&self, g: &Graph) {
        if g.n() == self.c.n {
            if !self.out_of_budget() && self.c.accepts(g) {
                self.visited.fetch_add(1, Ordering::Relaxed);
                (self.visit)(g);
            }
            return;
        }
        self.expand(g, &mut |child| self.descend(&child));
    }

    /// Produces the canonical children of `g` that survive pruning.
    fn expand(&self, g: &Graph, emit: &mut dyn FnMut(Graph)) {
        if self.out_of_budget() {
            return;
        }
        if let Some(cut) = self.cut {
            if !cut(g) {
                return;
            }
        }
        let c = self.c;
        let k = g.n();
        let prune = self.opts.prune;
        let remaining = c.n - k - 1;

        let mut saturated = 0u64;
        let mut needy = 0u64;
        let cur_min = g.min_degree();
        let mut at_min = 0u64;
        for x in 0..k {
            let d = g.degree(x);
            if d >= c.max_degree {
                saturated |= 1 << x;
            }
            if d + remaining < c.min_degree {
                needy |= 1 << x;
            }
            if d == cur_min {
                at_min |= 1 << x;
            }
        }
        let planar_cap = if c.require_planar && k + 1 >= 3 { 3 * (k + 1) - 6 } else { usize::MAX };

        let mut parent_symmetric: Option<bool> = None;
        let mut seen: HashSet<CanonicalForm> = HashSet::new();

        let top = (1u64 << k) - 1;
        for t in 0u64..=top {
            let s = if self.dense_first { top - t } else { t };
            let deg = s.count_ones() as usize;
            // the new vertex must be a minimum-degree vertex of the child
            if deg > cur_min + 1 {
                continue;
            }
            if deg > cur_min && at_min & !s != 0 {
                continue;
            }
            if prune {
                if deg > c.max_degree || s & saturated != 0 || needy & !s != 0 || deg + remaining < c.min_degree {
                    continue;
                }
                if g.m() + deg > planar_cap {
                    continue;
                }
            }
            let child = g.add_vertex_unchecked(s);
            if prune && c.forbid.iter().any(|&p| creates_double_star_at(&child, k, p)) {
                continue;
            }
            if !is_canonical_child(&child, k) {
                continue;
            }
            if prune && c.require_planar && !is_planar(&child) {
                continue;
            }
            let symmetric = *parent_symmetric.get_or_insert_with(|| !canonical_labeling(g).automorphisms.is_empty());
            if symmetric && !seen.insert(canonical_form(&child)) {
                continue;
            }
            emit(child);
        }
    }
}

/// Is `v` in the orbit of the canonical deletion vertex of `g`?
pub(crate) fn is_canonical_child(g: &Graph, v: usize) -> bool {
    if g.degree(v) != g.min_degree() {
        return false;
    }
    let cells = refined_degree_partition(g);
    let first = cells[0];
    if first >> v & 1 == 0 {
        return false;
    }
    if first.count_ones() == 1 {
        return true;
    }
    let lab = canonical_labeling_from(g, cells.clone());
    let w = lab.order[0];
    if w == v || lab.known_same_orbit(v, w) {
        return true;
    }
    let pinned = |x: usize| {
        let mut c = Vec::with_capacity(cells.len() + 1);
        c.push(1u64 << x);
        c.push(first & !(1u64 << x));
        c.extend_from_slice(&cells[1..]);
        canonical_labeling_from(g, c).form
    };
    pinned(v) == pinned(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use std::sync::Mutex;

    fn forms(c: &EnumerationConstraints, opts: &EnumOptions) -> (EnumerationSummary, Vec<CanonicalForm>) {
        let out = Mutex::new(Vec::new());
        let summary = enumerate(c, opts, |g| out.lock().unwrap().push(canonical_form(g))).unwrap();
        let mut v = out.into_inner().unwrap();
        v.sort();
        (summary, v)
    }

    fn all_labeled_classes(n: usize, keep: impl Fn(&Graph) -> bool) -> BTreeSet<CanonicalForm> {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        let mut out = BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::build(n, &edges).unwrap();
            if keep(&g) {
                out.insert(canonical_form(&g));
            }
        }
        out
    }

    #[test]
    fn four_vertex_counts() {
        let (s, f) = forms(&EnumerationConstraints::new(4), &EnumOptions::sequential());
        assert_eq!(s.visited, 11);
        assert_eq!(f.len(), 11);
        let c = EnumerationConstraints { require_connected: true, ..EnumerationConstraints::new(4) };
        assert_eq!(forms(&c, &EnumOptions::sequential()).0.visited, 6);
    }

    #[test]
    fn unconstrained_counts_match_labeled_dedup() {
        // 1, 2, 4, 11, 34, 156 graphs on 1..=6 vertices
        let expected = [1, 2, 4, 11, 34, 156];
        for n in 1..=6 {
            let (s, f) = forms(&EnumerationConstraints::new(n), &EnumOptions::default());
            assert_eq!(s.visited, expected[n - 1]);
            let unique: BTreeSet<_> = f.iter().cloned().collect();
            assert_eq!(unique.len(), f.len(), "duplicate class at n={n}");
            assert_eq!(unique, all_labeled_classes(n, |_| true));
        }
    }

    #[test]
    fn seven_vertex_count() {
        let (s, f) = forms(&EnumerationConstraints::new(7), &EnumOptions::default());
        assert_eq!(s.visited, 1044);
        let unique: BTreeSet<_> = f.iter().cloned().collect();
        assert_eq!(unique.len(), 1044);
    }

    #[test]
    fn connected_planar_counts() {
        // connected planar graphs on 1..=7 vertices: 1, 1, 2, 6, 20, 99, 646
        let expected = [1, 1, 2, 6, 20, 99, 646];
        for n in 1..=7 {
            let c = EnumerationConstraints {
                require_connected: true,
                require_planar: true,
                ..EnumerationConstraints::new(n)
            };
            assert_eq!(forms(&c, &EnumOptions::default()).0.visited, expected[n - 1], "n={n}");
        }
    }

    #[test]
    fn pruned_and_unpruned_agree() {
        let bundles = |n: usize| {
            vec![
                EnumerationConstraints::new(n),
                EnumerationConstraints { require_planar: true, ..EnumerationConstraints::new(n) },
                EnumerationConstraints { max_degree: 3, min_degree: 1, ..EnumerationConstraints::new(n) },
                EnumerationConstraints { min_degree: 2, require_connected: true, ..EnumerationConstraints::new(n) },
                EnumerationConstraints {
                    require_bridgeless: true,
                    require_connected: true,
                    ..EnumerationConstraints::new(n)
                },
                EnumerationConstraints { forbid: vec![DoubleStar::new(1, 1)], ..EnumerationConstraints::new(n) },
                EnumerationConstraints {
                    forbid: vec![DoubleStar::new(1, 2), DoubleStar::new(2, 2)],
                    ..EnumerationConstraints::new(n)
                },
                EnumerationConstraints {
                    require_feature: Some(FeatureKind::KLEdge(3, 3)),
                    forbid_feature: vec![FeatureKind::KLSPath(2, 3, 2)],
                    ..EnumerationConstraints::new(n)
                },
                EnumerationConstraints {
                    max_degree: 4,
                    min_degree: 3,
                    require_planar: true,
                    ..EnumerationConstraints::new(n)
                },
            ]
        };
        for n in 1..=6 {
            for c in bundles(n) {
                let pruned = forms(&c, &EnumOptions::default()).1;
                let unpruned = forms(&c, &EnumOptions { prune: false, ..EnumOptions::default() }).1;
                assert_eq!(pruned, unpruned, "{c:?}");
                assert_eq!(pruned.into_iter().collect::<BTreeSet<_>>(), all_labeled_classes(n, |g| c.accepts(g)));
            }
        }
    }

    #[test]
    fn planar_counts() {
        // planar graphs on 1..=8 vertices, connected or not
        let expected = [1, 2, 4, 11, 33, 142, 822, 6966];
        for n in 1..=8 {
            let c = EnumerationConstraints { require_planar: true, ..EnumerationConstraints::new(n) };
            assert_eq!(forms(&c, &EnumOptions::default()).0.visited, expected[n - 1], "n={n}");
        }
    }

    #[test]
    fn nine_vertex_planar_s25_free_matches_filtered_planar() {
        let planar = EnumerationConstraints { require_planar: true, ..EnumerationConstraints::new(9) };
        let filtered = Mutex::new(0u64);
        let all = enumerate(&planar, &EnumOptions::default(), |g| {
            if is_free_of(g, DoubleStar::S25) {
                *filtered.lock().unwrap() += 1;
            }
        })
        .unwrap();
        assert_eq!(all.visited, 79853);
        let free = EnumerationConstraints { forbid: vec![DoubleStar::S25], ..planar };
        let direct = enumerate(&free, &EnumOptions::default(), |_| {}).unwrap();
        assert_eq!(direct.visited, filtered.into_inner().unwrap());
        assert!(direct.visited < all.visited);
    }

    #[test]
    fn lemma_hosts_pruned_and_unpruned_agree() {
        for n in 7..=8 {
            let c = EnumerationConstraints::lemma_hosts(n);
            let pruned = forms(&c, &EnumOptions::default()).1;
            let unpruned = forms(&c, &EnumOptions { prune: false, ..EnumOptions::default() }).1;
            assert!(!pruned.is_empty());
            assert_eq!(pruned, unpruned, "n={n}");
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let c = EnumerationConstraints {
            require_planar: true,
            forbid: vec![DoubleStar::new(2, 2)],
            ..EnumerationConstraints::new(8)
        };
        let (a, fa) = forms(&c, &EnumOptions::default());
        let (b, fb) = forms(&c, &EnumOptions::sequential());
        assert_eq!(a.visited, b.visited);
        assert_eq!(fa, fb);
    }

    #[test]
    fn budget_truncation_is_flagged() {
        let opts =
            EnumOptions { budget: Budget { max_nodes: Some(50), max_seconds: None }, ..EnumOptions::sequential() };
        let s = enumerate(&EnumerationConstraints::new(7), &opts, |_| {}).unwrap();
        assert!(!s.exhaustive);
        assert!(s.visited < 1044);
        let full = enumerate(&EnumerationConstraints::new(5), &EnumOptions::sequential(), |_| {}).unwrap();
        assert!(full.exhaustive);
    }

    #[test]
    fn invalid_constraints() {
        let bad = EnumerationConstraints { min_degree: 4, max_degree: 3, ..EnumerationConstraints::new(5) };
        assert!(matches!(enumerate(&bad, &EnumOptions::default(), |_| {}), Err(EnumerateError::InvalidConstraints(_))));
        assert!(enumerate(&EnumerationConstraints::new(0), &EnumOptions::default(), |_| {}).is_err());
        let zero = EnumerationConstraints { forbid: vec![DoubleStar::new(0, 2)], ..EnumerationConstraints::new(3) };
        assert!(enumerate(&zero, &EnumOptions::default(), |_| {}).is_err());
    }

    #[test]
    fn budget_from_env_parses() {
        // only checks the parser on whatever the environment holds
        let b = Budget::from_env();
        if std::env::var(BUDGET_NODES_ENV).is_err() {
            assert_eq!(b.max_nodes, None);
        }
    }
}
