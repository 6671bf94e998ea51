//! Planarity testing with the left-right criterion.
//!
//! The DFS orientation phase computes heights, lowpoints and nesting depths;
//! the testing phase processes outgoing edges in nesting order and maintains a
//! stack of conflict pairs of return-edge intervals. The graph is planar iff no
//! interval constraint becomes unsatisfiable. Only the decision is produced.

use crate::graph::{Graph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerVerdict {
    DefinitelyNonplanar,
    Unknown,
}

/// `DefinitelyNonplanar` iff `n ≥ 3` and `m > 3n − 6`.
pub fn euler_prefilter(g: &Graph) -> EulerVerdict {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        EulerVerdict::DefinitelyNonplanar
    } else {
        EulerVerdict::Unknown
    }
}

pub fn is_planar(g: &Graph) -> bool {
    if euler_prefilter(g) == EulerVerdict::DefinitelyNonplanar {
        return false;
    }
    if g.n() <= 4 {
        return true;
    }
    LrState::new(g).run()
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval { low: NONE, high: NONE };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    g: &'a Graph,
    height: [usize; MAX_VERTICES],
    parent_edge: [usize; MAX_VERTICES],
    // oriented edges, indexed by id
    source: Vec<usize>,
    target: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    lowpt_edge: Vec<usize>,
    reference: Vec<usize>,
    stack_bottom: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    stack: Vec<ConflictPair>,
}

impl<'a> LrState<'a> {
    fn new(g: &'a Graph) -> Self {
        let m = g.m();
        LrState {
            g,
            height: [NONE; MAX_VERTICES],
            parent_edge: [NONE; MAX_VERTICES],
            source: Vec::with_capacity(m),
            target: Vec::with_capacity(m),
            lowpt: Vec::with_capacity(m),
            lowpt2: Vec::with_capacity(m),
            nesting_depth: Vec::with_capacity(m),
            lowpt_edge: Vec::new(),
            reference: Vec::new(),
            stack_bottom: Vec::new(),
            out_edges: vec![Vec::new(); g.n()],
            stack: Vec::new(),
        }
    }

    fn run(mut self) -> bool {
        let n = self.g.n();
        let mut unoriented = [0u64; MAX_VERTICES];
        unoriented[..n].copy_from_slice(self.g.rows());
        let mut roots = Vec::new();
        for v in 0..n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.orient(v, &mut unoriented);
            }
        }
        let m = self.source.len();
        self.lowpt_edge = vec![NONE; m];
        self.reference = vec![NONE; m];
        self.stack_bottom = vec![0; m];
        for v in 0..n {
            let depth = &self.nesting_depth;
            self.out_edges[v].sort_by_key(|&e| depth[e]);
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn orient(&mut self, v: usize, unoriented: &mut [u64; MAX_VERTICES]) {
        let e = self.parent_edge[v];
        while unoriented[v] != 0 {
            let w = unoriented[v].trailing_zeros() as usize;
            unoriented[v] &= !(1u64 << w);
            unoriented[w] &= !(1u64 << v);
            let vw = self.source.len();
            self.source.push(v);
            self.target.push(w);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting_depth.push(0);
            self.out_edges[v].push(vw);
            if self.height[w] == NONE {
                self.parent_edge[w] = vw;
                self.height[w] = self.height[v] + 1;
                self.orient(w, unoriented);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] + usize::from(self.lowpt2[vw] < self.height[v]);
            if e != NONE {
                let (lv, lv2) = (self.lowpt[vw], self.lowpt2[vw]);
                if lv < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(lv2);
                    self.lowpt[e] = lv;
                } else if lv > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(lv);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(lv2);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.is_empty() && self.lowpt[i.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let edges = std::mem::take(&mut self.out_edges[v]);
        for (idx, &ei) in edges.iter().enumerate() {
            let w = self.target[ei];
            self.stack_bottom[ei] = self.stack.len();
            if ei == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair { left: Interval::EMPTY, right: Interval { low: ei, high: ei } });
            }
            if self.lowpt[ei] < self.height[v] {
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if e != NONE {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair { left: Interval::EMPTY, right: Interval::EMPTY };
        // merge return edges of ei into p.right
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q.right.low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if p.right.low != NONE {
                self.reference[p.right.low] = q.right.high;
            }
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if p.left.low != NONE {
                self.reference[p.left.low] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.source[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.target[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.target[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.reference[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) { hl } else { hr };
            }
        }
    }
}

/// Brute-force Kuratowski check for small graphs: searches for a subdivision of
/// K5 or K3,3 by trying every placement of branch vertices and every routing of
/// the remaining vertices onto pattern edges. Exact when at most two vertices
/// remain outside the branch set, i.e. `n ≤ 7`.
pub fn has_kuratowski_subdivision_small(g: &Graph) -> bool {
    assert!(g.n() <= 7, "brute-force Kuratowski search is limited to 7 vertices");
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let k33: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    contains_subdivision(g, 5, &k5, 4) || contains_subdivision(g, 6, &k33, 3)
}

fn contains_subdivision(g: &Graph, k: usize, pattern: &[(usize, usize)], min_deg: usize) -> bool {
    let n = g.n();
    if n < k {
        return false;
    }
    let candidates: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= min_deg).collect();
    let mut branch = Vec::with_capacity(k);
    place_branches(g, k, pattern, &candidates, &mut branch)
}

fn place_branches(g: &Graph, k: usize, pattern: &[(usize, usize)], cand: &[usize], branch: &mut Vec<usize>) -> bool {
    if branch.len() == k {
        let used: VertexSet = branch.iter().copied().collect();
        let extras = g.vertices().difference(used).to_vec();
        return route_extras(g, pattern, branch, &extras, &mut vec![Vec::new(); pattern.len()], 0);
    }
    for &v in cand {
        if branch.contains(&v) {
            continue;
        }
        branch.push(v);
        let found = place_branches(g, k, pattern, cand, branch);
        branch.pop();
        if found {
            return true;
        }
    }
    false
}

fn route_extras(
    g: &Graph,
    pattern: &[(usize, usize)],
    branch: &[usize],
    extras: &[usize],
    routes: &mut Vec<Vec<usize>>,
    i: usize,
) -> bool {
    if i == extras.len() {
        return pattern
            .iter()
            .zip(routes.iter())
            .all(|(&(a, b), inner)| path_exists_through(g, branch[a], branch[b], inner));
    }
    // extra unused
    if route_extras(g, pattern, branch, extras, routes, i + 1) {
        return true;
    }
    for j in 0..pattern.len() {
        routes[j].push(extras[i]);
        let found = route_extras(g, pattern, branch, extras, routes, i + 1);
        routes[j].pop();
        if found {
            return true;
        }
    }
    false
}

/// Is there a path `a, inner (in some order), b` using exactly the listed inner vertices?
fn path_exists_through(g: &Graph, a: usize, b: usize, inner: &[usize]) -> bool {
    match inner {
        [] => g.has_edge(a, b),
        [x] => g.has_edge(a, *x) && g.has_edge(*x, b),
        [x, y] => {
            (g.has_edge(a, *x) && g.has_edge(*x, *y) && g.has_edge(*y, b))
                || (g.has_edge(a, *y) && g.has_edge(*y, *x) && g.has_edge(*x, b))
        }
        _ => unreachable!("at most two extra vertices"),
    }
}
