//! Simple undirected graphs on at most 64 vertices, one `u64` adjacency row per vertex.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Maximum number of vertices a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph capacity is {MAX_VERTICES} vertices, got {0}")]
    Capacity(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("operation needs at least one vertex")]
    EmptyGraph,
}

/// A set of vertices stored as a 64-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        vs.iter().fold(VertexSet::EMPTY, |s, &v| s.with(v))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// The `k` smallest members, or all of them if there are fewer.
    pub fn lowest(self, k: usize) -> Self {
        self.iter().take(k).fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An immutable simple undirected graph.
///
/// Rows beyond `n` are always zero, so derived equality and hashing compare
/// labelled graphs exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let mut adj = [0u64; MAX_VERTICES];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph::from_rows(n, adj))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Graph::build(n, &[])
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let full = VertexSet::full(n).bits();
        let mut adj = [0u64; MAX_VERTICES];
        for (v, row) in adj.iter_mut().enumerate().take(n) {
            *row = full & !(1 << v);
        }
        Ok(Graph::from_rows(n, adj))
    }

    /// Builds a graph from raw rows. Rows must be symmetric, loop-free and
    /// confined to the first `n` bits; this is checked in debug builds only.
    pub(crate) fn from_rows(n: usize, adj: [u64; MAX_VERTICES]) -> Graph {
        debug_assert!(n <= MAX_VERTICES);
        let m = adj[..n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        let g = Graph { n, m, adj };
        debug_assert!(g.check_invariants());
        g
    }

    pub(crate) fn check_invariants(&self) -> bool {
        let mask = VertexSet::full(self.n).bits();
        let mut deg_sum = 0;
        for u in 0..MAX_VERTICES {
            let row = self.adj[u];
            if u >= self.n {
                if row != 0 {
                    return false;
                }
                continue;
            }
            if row & !mask != 0 || row >> u & 1 == 1 {
                return false;
            }
            for v in VertexSet(row) {
                if self.adj[v] >> u & 1 == 0 {
                    return false;
                }
            }
            deg_sum += row.count_ones() as usize;
        }
        deg_sum == 2 * self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Adjacency row of `v`; no range check.
    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(VertexSet(self.adj[v]))
    }

    /// `N(v)` without a range check; panics in debug builds if `v` is out of range.
    #[inline]
    pub fn nbrs(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.n);
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// `N(u) ∩ N(v)`. For an edge `uv` its size is the number of triangles on `uv`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(VertexSet(self.adj[u] & self.adj[v]))
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] >> u >> 1 << 1 << u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn degree_histogram(&self) -> DegreeHistogram {
        let mut counts = BTreeMap::new();
        for v in 0..self.n {
            *counts.entry(self.degree(v)).or_insert(0) += 1;
        }
        DegreeHistogram::from_counts(counts)
    }

    /// True iff the graph has exactly one connected component.
    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(self.component_of(0) == self.vertices())
    }

    pub(crate) fn component_of(&self, v: usize) -> VertexSet {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in VertexSet(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet(seen)
    }

    pub fn component_count(&self) -> usize {
        let mut left = self.vertices();
        let mut count = 0;
        while let Some(v) = left.first() {
            left = left.difference(self.component_of(v));
            count += 1;
        }
        count
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.component_of(v);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    /// All cut edges, as sorted `(u, v)` pairs with `u < v`.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut disc = [u32::MAX; MAX_VERTICES];
        let mut low = [0u32; MAX_VERTICES];
        let mut out = Vec::new();
        let mut time = 0u32;
        // iterative DFS: (vertex, parent, unexplored neighbours)
        let mut stack: Vec<(usize, usize, u64)> = Vec::with_capacity(n);
        for root in 0..n {
            if disc[root] != u32::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, usize::MAX, self.adj[root]));
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if top.2 != 0 {
                    let w = top.2.trailing_zeros() as usize;
                    top.2 &= top.2 - 1;
                    if w == parent {
                        continue;
                    }
                    if disc[w] == u32::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, v, self.adj[w]));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }

    /// `G \ v`, with vertices above `v` shifted down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let low_mask = (1u64 << v) - 1;
        let squeeze = |r: u64| (r & low_mask) | ((r >> 1) & !low_mask);
        let mut adj = [0u64; MAX_VERTICES];
        for (j, u) in (0..self.n).filter(|&u| u != v).enumerate() {
            adj[j] = squeeze(self.adj[u]);
        }
        Ok(Graph::from_rows(self.n - 1, adj))
    }

    /// Subgraph induced on `keep`, relabelled in increasing vertex order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let keep = keep.intersection(self.vertices());
        let order = keep.to_vec();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = [0u64; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            for w in VertexSet(self.adj[v] & keep.bits()) {
                adj[i] |= 1 << pos[w];
            }
        }
        Graph::from_rows(order.len(), adj)
    }

    /// `e[S, T]`: number of edges with one end in `s` and the other in `t`.
    pub fn edges_between(&self, s: VertexSet, t: VertexSet) -> Result<usize, GraphError> {
        if !s.intersection(t).is_empty() {
            return Err(GraphError::OverlappingSets);
        }
        for v in s.union(t) {
            self.check_vertex(v)?;
        }
        Ok(s.iter().map(|u| (self.adj[u] & t.bits()).count_ones() as usize).sum())
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut adj = self.adj;
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        Ok(Graph::from_rows(self.n, adj))
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let mut adj = self.adj;
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Ok(Graph { n: self.n, m: self.m - 1, adj })
    }

    /// Appends vertex `n` adjacent to `nbrs` (which must lie in `0..n`).
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph, GraphError> {
        if self.n == MAX_VERTICES {
            return Err(GraphError::Capacity(self.n + 1));
        }
        if let Some(bad) = nbrs.difference(self.vertices()).first() {
            return Err(GraphError::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok(self.add_vertex_unchecked(nbrs.bits()))
    }

    #[inline]
    pub(crate) fn add_vertex_unchecked(&self, nbrs: u64) -> Graph {
        let v = self.n;
        let mut adj = self.adj;
        adj[v] = nbrs;
        let mut rest = nbrs;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[u] |= 1 << v;
        }
        Graph { n: v + 1, m: self.m + nbrs.count_ones() as usize, adj }
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let n = self.n;
        let mut seen = 0u64;
        if perm.len() != n {
            return Err(GraphError::VertexOutOfRange { vertex: perm.len(), n });
        }
        for &p in perm {
            if p >= n || seen >> p & 1 == 1 {
                return Err(GraphError::VertexOutOfRange { vertex: p, n });
            }
            seen |= 1 << p;
        }
        let mut adj = [0u64; MAX_VERTICES];
        for u in 0..n {
            for w in VertexSet(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[w];
            }
        }
        Ok(Graph::from_rows(n, adj))
    }

    /// Vertex-disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let mut adj = self.adj;
        for v in 0..other.n {
            adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(Graph::from_rows(n, adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Number of vertices of each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    counts: BTreeMap<usize, usize>,
    min_degree: usize,
    max_degree: usize,
}

impl DegreeHistogram {
    /// Zero counts are dropped.
    pub fn from_counts(counts: BTreeMap<usize, usize>) -> Self {
        let counts: BTreeMap<usize, usize> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let min_degree = counts.keys().next().copied().unwrap_or(0);
        let max_degree = counts.keys().next_back().copied().unwrap_or(0);
        DegreeHistogram { counts, min_degree, max_degree }
    }

    /// `n_k`.
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn vertex_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }
}
