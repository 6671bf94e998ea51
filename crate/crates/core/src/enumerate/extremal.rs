//! Extremal numbers by exhaustive search, and an independent oracle that works
//! down from triangulations.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::{Budget, EnumOptions, EnumerateError, EnumerationConstraints, Generator};
use crate::canon::{canonical_form, CanonicalForm};
use crate::forbid::{find_double_star, DoubleStar};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::graph6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Best connected graph per order, then the best split into components.
    Exhaustive,
    /// One search over all graphs, cutting subtrees that cannot reach the incumbent.
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: DoubleStar,
    pub planar: bool,
    pub mode: SearchMode,
    /// Most edges seen on a host graph.
    pub max_edges: usize,
    /// Proven upper bound; equals `max_edges` when the search finished.
    pub upper_bound: usize,
    pub exhaustive: bool,
    pub witness_count: usize,
    /// graph6 strings of the canonical extremal graphs, sorted.
    pub witnesses: Vec<String>,
    pub nodes: u64,
}

/// Running maximum plus every class attaining it.
struct Incumbent {
    best: AtomicUsize,
    classes: Mutex<(usize, BTreeSet<CanonicalForm>)>,
}

impl Incumbent {
    fn new() -> Self {
        Incumbent { best: AtomicUsize::new(0), classes: Mutex::new((0, BTreeSet::new())) }
    }

    fn offer(&self, g: &Graph) {
        let m = g.m();
        if m < self.best.load(Ordering::Relaxed) {
            return;
        }
        let form = canonical_form(g);
        let mut state = self.classes.lock().unwrap();
        if m > state.0 {
            state.0 = m;
            state.1.clear();
        }
        if m == state.0 {
            state.1.insert(form);
        }
        self.best.fetch_max(m, Ordering::Relaxed);
    }

    fn into_inner(self) -> (usize, BTreeSet<CanonicalForm>) {
        self.classes.into_inner().unwrap()
    }
}

/// Shrinks a budget by what has already been spent.
fn remaining(budget: &Budget, start: Instant, spent_nodes: u64) -> Budget {
    Budget {
        max_nodes: budget.max_nodes.map(|b| b.saturating_sub(spent_nodes)),
        max_seconds: budget.max_seconds.map(|s| (s - start.elapsed().as_secs_f64()).max(0.0)),
    }
}

fn trivial_cap(n: usize, planar: bool) -> usize {
    if planar && n >= 3 {
        3 * n - 6
    } else {
        n * n.saturating_sub(1) / 2
    }
}

/// `ex(n, pattern)` over planar (or all) graphs, with every extremal class.
pub fn ex_search(
    n: usize,
    pattern: DoubleStar,
    planar: bool,
    mode: SearchMode,
    opts: &EnumOptions,
) -> Result<ExtremalRecord, EnumerateError> {
    let probe =
        EnumerationConstraints { require_planar: planar, forbid: vec![pattern], ..EnumerationConstraints::new(n) };
    probe.validate()?;
    let (best, classes, exhaustive, nodes) = match mode {
        SearchMode::Exhaustive => exhaustive_by_composition(n, pattern, planar, opts)?,
        SearchMode::BranchAndBound => branch_and_bound(&probe, opts),
    };
    let witnesses: Vec<String> = classes.iter().map(|f| graph6::encode(&f.to_graph())).collect();
    Ok(ExtremalRecord {
        n,
        pattern,
        planar,
        mode,
        max_edges: best,
        upper_bound: if exhaustive { best } else { trivial_cap(n, planar) },
        exhaustive,
        witness_count: witnesses.len(),
        witnesses,
        nodes,
    })
}

type Search = (usize, BTreeSet<CanonicalForm>, bool, u64);

fn exhaustive_by_composition(
    n: usize,
    pattern: DoubleStar,
    planar: bool,
    opts: &EnumOptions,
) -> Result<Search, EnumerateError> {
    let start = Instant::now();
    let mut nodes = 0;
    let mut exhaustive = true;
    // table[k] = (ex(k), extremal classes on k vertices)
    let mut table: Vec<(usize, BTreeSet<CanonicalForm>)> = vec![(0, BTreeSet::new())];
    for k in 1..=n {
        let c = EnumerationConstraints {
            require_connected: true,
            require_planar: planar,
            forbid: vec![pattern],
            ..EnumerationConstraints::new(k)
        };
        let sub = EnumOptions { budget: remaining(&opts.budget, start, nodes), ..*opts };
        let inc = Incumbent::new();
        let visit = |g: &Graph| inc.offer(g);
        let summary = Generator::new(&c, &sub, &visit, None).run();
        nodes += summary.nodes;
        exhaustive &= summary.exhaustive;
        let (mut best, mut classes) = inc.into_inner();

        for j in 1..=k / 2 {
            let split = table[j].0 + table[k - j].0;
            if split < best {
                continue;
            }
            if split > best {
                best = split;
                classes.clear();
            }
            for a in &table[j].1 {
                for b in &table[k - j].1 {
                    let g = a.to_graph().disjoint_union(&b.to_graph())?;
                    classes.insert(canonical_form(&g));
                }
            }
        }
        table.push((best, classes));
    }
    let (best, classes) = table.pop().expect("n >= 1");
    Ok((best, classes, exhaustive, nodes))
}

fn branch_and_bound(c: &EnumerationConstraints, opts: &EnumOptions) -> Search {
    let n = c.n;
    let inc = Incumbent::new();
    // Each later vertex joins with the minimum degree of its graph, which is at
    // most 5 in a planar graph and at most the current order otherwise.
    let degree_cap = if c.require_planar { 5 } else { MAX_VERTICES };
    let cap = trivial_cap(n, c.require_planar);
    let cut = |g: &Graph| {
        let k = g.n();
        let extra: usize = (k..n).map(|j| j.min(degree_cap)).sum();
        (g.m() + extra).min(cap) >= inc.best.load(Ordering::Relaxed)
    };
    let visit = |g: &Graph| inc.offer(g);
    let summary = Generator::new(c, opts, &visit, Some(&cut)).dense_first().run();
    let (best, classes) = inc.into_inner();
    (best, classes, summary.exhaustive, summary.nodes)
}

/// Is the triangle `{a, b, c}` non-separating, i.e. a face of a triangulation?
fn is_face(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    let removed = (1u64 << a) | (1u64 << b) | (1u64 << c);
    let rest = g.vertices().bits() & !removed;
    if rest == 0 {
        return true;
    }
    let mut seen = rest & rest.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = g.row(v) & rest & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == rest
}

/// Every triangulation of the sphere on `n` vertices, up to isomorphism,
/// as canonical graphs sorted by canonical form. Empty for `n < 3`.
///
/// Built by breadth-first search over diagonal flips, which connect all
/// triangulations of a given order.
pub fn triangulations(n: usize) -> Vec<Graph> {
    let seed = match n {
        0..=2 => return Vec::new(),
        3 => Graph::complete(3).expect("fits"),
        4 => Graph::complete(4).expect("fits"),
        _ if n > MAX_VERTICES => return Vec::new(),
        _ => {
            // bipyramid over an (n − 2)-cycle
            let r = n - 2;
            let mut edges = Vec::new();
            for i in 0..r {
                edges.push((i, (i + 1) % r));
                edges.push((i, r));
                edges.push((i, r + 1));
            }
            Graph::build(n, &edges).expect("valid bipyramid")
        }
    };
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out: Vec<CanonicalForm> = Vec::new();
    let mut queue = VecDeque::new();
    let f = canonical_form(&seed);
    seen.insert(f.clone());
    out.push(f);
    queue.push_back(seed);
    while let Some(g) = queue.pop_front() {
        for (u, v) in g.edges() {
            let apexes: Vec<usize> = VertexSet(g.row(u) & g.row(v)).iter().filter(|&x| is_face(&g, u, v, x)).collect();
            let [x, y] = apexes[..] else { continue };
            if g.has_edge(x, y) {
                continue;
            }
            let h = g.without_edge(u, v).and_then(|h| h.with_edge(x, y)).expect("flip stays simple");
            let f = canonical_form(&h);
            if seen.insert(f.clone()) {
                out.push(f);
                queue.push_back(h);
            }
        }
    }
    out.sort();
    out.iter().map(CanonicalForm::to_graph).collect()
}

/// Fewest edge deletions that leave `g` free of `pattern`, if at most `limit`.
pub fn min_deletions_to_free(g: &Graph, pattern: DoubleStar, limit: usize) -> Option<usize> {
    let edges = g.edges();
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut failed = HashSet::new();
    (0..=limit).find(|&d| hits_all(g, pattern, d, 0, &index, &mut failed))
}

/// Can `d` more deletions destroy every copy? Branches on the edges of one copy.
fn hits_all(
    g: &Graph,
    pattern: DoubleStar,
    d: usize,
    deleted: u128,
    index: &HashMap<(usize, usize), usize>,
    failed: &mut HashSet<(u128, usize)>,
) -> bool {
    let Some(w) = find_double_star(g, pattern) else { return true };
    if d == 0 || failed.contains(&(deleted, d)) {
        return false;
    }
    for (a, b) in w.edges() {
        let key = (a.min(b), a.max(b));
        let bit = 1u128 << index[&key];
        let h = g.without_edge(a, b).expect("witness edge exists");
        if hits_all(&h, pattern, d - 1, deleted | bit, index, failed) {
            return true;
        }
    }
    failed.insert((deleted, d));
    false
}

/// `ex_P(n, pattern)` as the best over triangulations `T` of `|E(T)|` minus the
/// fewest deletions making `T` pattern-free. Every planar graph on `n ≥ 3`
/// vertices lies inside some triangulation of the same order, so this is exact.
pub fn triangulation_oracle(n: usize, pattern: DoubleStar) -> Option<usize> {
    if n < 3 {
        return None;
    }
    let full = 3 * n - 6;
    let mut best = 0;
    for t in triangulations(n) {
        if best == full {
            break;
        }
        // only deletion counts that would beat the incumbent matter
        if let Some(d) = min_deletions_to_free(&t, pattern, full - best) {
            best = best.max(full - d);
        }
    }
    Some(best)
}
