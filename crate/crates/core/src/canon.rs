//! Canonical labelling by equitable partition refinement and individualization.
//!
//! The search tree starts from the degree partition (cells ordered by degree),
//! refines it to an equitable partition, then individualizes vertices of the
//! first non-singleton cell. Every discrete leaf gives a relabelled adjacency
//! matrix; the canonical form is the lexicographically smallest one. Leaves that
//! tie with the best or the first leaf yield automorphisms, which prune sibling
//! branches lying in the same orbit of the prefix stabilizer.

use std::fmt;

use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// Certificate of an isomorphism class: equal forms iff isomorphic graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    fn from_rows(rows: &[u64]) -> Self {
        let n = rows.len();
        let width = n.div_ceil(8);
        let mut bytes = Vec::with_capacity(1 + n * width);
        bytes.push(n as u8);
        for r in rows {
            bytes.extend_from_slice(&r.to_le_bytes()[..width]);
        }
        CanonicalForm(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical representative this form encodes.
    pub fn to_graph(&self) -> Graph {
        let n = self.0[0] as usize;
        let width = n.div_ceil(8);
        let mut adj = [0u64; MAX_VERTICES];
        for (i, row) in adj.iter_mut().enumerate().take(n) {
            let mut buf = [0u8; 8];
            buf[..width].copy_from_slice(&self.0[1 + i * width..1 + (i + 1) * width]);
            *row = u64::from_le_bytes(buf);
        }
        Graph::from_rows(n, adj)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Result of a canonical labelling search.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub form: CanonicalForm,
    /// `order[p]` is the vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    /// Automorphisms met during the search, as vertex maps. Empty iff the
    /// automorphism group is trivial.
    pub automorphisms: Vec<Vec<u8>>,
}

impl Labeling {
    /// `position[v]` is the canonical position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// True if some recorded automorphism chain maps `a` to `b`.
    pub fn known_same_orbit(&self, a: usize, b: usize) -> bool {
        let n = self.order.len();
        let mut uf = UnionFind::new(n);
        for gamma in &self.automorphisms {
            for (v, &w) in gamma.iter().enumerate() {
                uf.union(v, w as usize);
            }
        }
        uf.find(a) == uf.find(b)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    canonical_labeling_from(g, degree_partition(g))
}

/// Canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_form(g).to_graph()
}

/// Canonical labelling relative to an ordered vertex colouring. The colouring
/// must be computed label-invariantly for the result to be a certificate.
pub fn canonical_labeling_from(g: &Graph, cells: Vec<u64>) -> Labeling {
    let n = g.n();
    if n == 0 {
        return Labeling { form: CanonicalForm::from_rows(&[]), order: Vec::new(), automorphisms: Vec::new() };
    }
    let mut search = Search { g, best: None, first: None, automorphisms: Vec::new() };
    let mut fixed = Vec::with_capacity(n);
    search.descend(cells, &mut fixed);
    let best = search.best.expect("search visits at least one leaf");
    Labeling { form: CanonicalForm::from_rows(&best.rows[..n]), order: best.order, automorphisms: search.automorphisms }
}

/// Cells of equal degree, in increasing degree order.
pub fn degree_partition(g: &Graph) -> Vec<u64> {
    let mut by_degree = [0u64; MAX_VERTICES];
    for v in 0..g.n() {
        by_degree[g.degree(v)] |= 1 << v;
    }
    by_degree.iter().copied().filter(|&c| c != 0).collect()
}

/// Equitable refinement of the degree partition.
pub fn refined_degree_partition(g: &Graph) -> Vec<u64> {
    let mut cells = degree_partition(g);
    refine(g, &mut cells);
    cells
}

/// Refines `cells` in place until every cell is equitable with respect to every
/// other. Fragments of a split cell are ordered by increasing neighbour count,
/// so the result depends only on the isomorphism type of (graph, partition).
pub fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut counts = [0u8; MAX_VERTICES];
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si];
            let mut ci = 0;
            while ci < cells.len() {
                let cell = cells[ci];
                if cell.count_ones() < 2 {
                    ci += 1;
                    continue;
                }
                let (mut lo, mut hi) = (u8::MAX, 0u8);
                for v in VertexSet(cell) {
                    let k = (g.row(v) & splitter).count_ones() as u8;
                    counts[v] = k;
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
                if lo == hi {
                    ci += 1;
                    continue;
                }
                let mut fragments: Vec<(u8, u64)> = Vec::new();
                for v in VertexSet(cell) {
                    match fragments.iter_mut().find(|f| f.0 == counts[v]) {
                        Some(f) => f.1 |= 1 << v,
                        None => fragments.push((counts[v], 1 << v)),
                    }
                }
                fragments.sort_unstable_by_key(|f| f.0);
                let k = fragments.len();
                cells.splice(ci..=ci, fragments.into_iter().map(|f| f.1));
                if si > ci {
                    si += k - 1;
                }
                ci += k;
                changed = true;
            }
            si += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Leaf {
    rows: [u64; MAX_VERTICES],
    order: Vec<usize>,
    /// Individualized vertices on the way down.
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<Leaf>,
    first: Option<Leaf>,
    automorphisms: Vec<Vec<u8>>,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Returns the depth to unwind to: when a leaf matches an earlier one, the
    /// subtree hanging below their common ancestor is an image of one already
    /// explored.
    fn descend(&mut self, mut cells: Vec<u64>, fixed: &mut Vec<usize>) -> usize {
        refine(self.g, &mut cells);
        let Some(ti) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, fixed);
        };
        let depth = fixed.len();
        let target = cells[ti];
        let mut explored: Vec<usize> = Vec::new();
        // orbits of the automorphisms fixing the prefix, absorbed as they appear
        let mut uf = UnionFind::new(self.g.n());
        let mut absorbed = 0;
        for x in VertexSet(target) {
            for gamma in &self.automorphisms[absorbed..] {
                if fixed.iter().all(|&f| gamma[f] as usize == f) {
                    for (v, &w) in gamma.iter().enumerate() {
                        uf.union(v, w as usize);
                    }
                }
            }
            absorbed = self.automorphisms.len();
            if explored.iter().any(|&e| uf.find(e) == uf.find(x)) {
                continue;
            }
            explored.push(x);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(1u64 << x);
            child.push(target & !(1u64 << x));
            child.extend_from_slice(&cells[ti + 1..]);
            fixed.push(x);
            let back = self.descend(child, fixed);
            fixed.pop();
            if back < depth {
                return back;
            }
        }
        depth
    }

    fn leaf(&mut self, cells: &[u64], fixed: &[usize]) -> usize {
        let g = self.g;
        let n = g.n();
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; MAX_VERTICES];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut rows = [0u64; MAX_VERTICES];
        for (p, &v) in order.iter().enumerate() {
            let mut r = 0u64;
            for w in g.nbrs(v) {
                r |= 1 << pos[w];
            }
            rows[p] = r;
        }
        let leaf = Leaf { rows, order, path: fixed.to_vec() };
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.rows[..n] == leaf.rows[..n] {
                // vertex at position p here maps to the vertex at p in the reference
                let mut gamma = vec![0u8; n];
                for (p, &v) in leaf.order.iter().enumerate() {
                    gamma[v] = reference.order[p] as u8;
                }
                let back = common_prefix(&leaf.path, &reference.path);
                if gamma.iter().enumerate().any(|(v, &w)| v != w as usize) {
                    self.automorphisms.push(gamma);
                }
                return back;
            }
        }
        let better = match &self.best {
            None => true,
            Some(b) => leaf.rows[..n] < b.rows[..n],
        };
        if self.first.is_none() {
            self.first = Some(Leaf { rows: leaf.rows, order: leaf.order.clone(), path: leaf.path.clone() });
        }
        if better {
            self.best = Some(leaf);
        }
        fixed.len()
    }
}

struct UnionFind {
    parent: [u8; MAX_VERTICES],
}

impl UnionFind {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate().take(n) {
            *p = i as u8;
        }
        UnionFind { parent }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[x] as usize;
            self.parent[x] = self.parent[up];
            x = up;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u8;
        }
    }
}
