//! Double-star containment.
//!
//! `S_{m,n}` sits on backbone `uv` iff, with `A = N(u) \ {v}` and
//! `B = N(v) \ {u}`, we have `|A| ≥ m`, `|B| ≥ n` and `|A ∪ B| ≥ m + n`.
//! Necessity is clear. For sufficiency give `u` its exclusive neighbours
//! `A \ B` first, `v` its exclusive neighbours `B \ A` first, and split the
//! common ones; the union bound guarantees enough common vertices remain.
//! The tests check this against exhaustive subset search.

use crate::graph::{Graph, GraphError, VertexSet};

/// A copy of `S_{m,n}`: backbone `(u, v)`, `leaves_u ⊆ N(u)`, `leaves_v ⊆ N(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleStarWitness {
    pub backbone: (usize, usize),
    pub leaves_u: VertexSet,
    pub leaves_v: VertexSet,
}

impl DoubleStarWitness {
    /// The `1 + m + n` edges of the copy.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let (u, v) = self.backbone;
        let mut out = vec![(u, v)];
        out.extend(self.leaves_u.iter().map(|x| (u, x)));
        out.extend(self.leaves_v.iter().map(|x| (v, x)));
        out
    }

    /// Structural validity against `g` for pattern `(m, n)`.
    pub fn is_valid_in(&self, g: &Graph, m: usize, n: usize) -> bool {
        let (u, v) = self.backbone;
        g.has_edge(u, v)
            && self.leaves_u.len() == m
            && self.leaves_v.len() == n
            && self.leaves_u.difference(g.nbrs(u).without(v)).is_empty()
            && self.leaves_v.difference(g.nbrs(v).without(u)).is_empty()
            && self.leaves_u.intersection(self.leaves_v).is_empty()
            && !self.leaves_u.union(self.leaves_v).contains(u)
            && !self.leaves_u.union(self.leaves_v).contains(v)
    }
}

/// A double star `S_{m,n}`: `m` leaves on the first backbone end, `n` on the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct DoubleStar {
    pub m: usize,
    pub n: usize,
}

impl DoubleStar {
    pub const S25: DoubleStar = DoubleStar { m: 2, n: 5 };

    pub fn new(m: usize, n: usize) -> Self {
        DoubleStar { m, n }
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n + 2
    }
}

impl std::fmt::Display for DoubleStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.m, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ForbidError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("double star leaf counts must be positive, got ({0}, {1})")]
    ZeroLeaves(usize, usize),
}

#[inline]
pub(crate) fn feasible_at(g: &Graph, u: usize, v: usize, m: usize, n: usize) -> bool {
    let a = g.row(u) & !(1u64 << v);
    let b = g.row(v) & !(1u64 << u);
    a.count_ones() as usize >= m && b.count_ones() as usize >= n && (a | b).count_ones() as usize >= m + n
}

/// Deterministic witness on oriented backbone `(u, v)`: lowest-index
/// exclusive neighbours first, then lowest shared ones.
fn witness_at(g: &Graph, u: usize, v: usize, m: usize, n: usize) -> Option<DoubleStarWitness> {
    if !feasible_at(g, u, v, m, n) {
        return None;
    }
    let a = g.nbrs(u).without(v);
    let b = g.nbrs(v).without(u);
    let shared = a.intersection(b);
    let mut leaves_u = a.difference(b).lowest(m);
    leaves_u = leaves_u.union(shared.lowest(m - leaves_u.len()));
    let mut leaves_v = b.difference(a).lowest(n);
    leaves_v = leaves_v.union(shared.difference(leaves_u).lowest(n - leaves_v.len()));
    let w = DoubleStarWitness { backbone: (u, v), leaves_u, leaves_v };
    debug_assert!(w.is_valid_in(g, m, n));
    Some(w)
}

/// Copy of `S_{m,n}` with backbone `(u, v)`, `u` carrying the `m` leaves.
pub fn double_star_at_edge(
    g: &Graph,
    u: usize,
    v: usize,
    m: usize,
    n: usize,
) -> Result<Option<DoubleStarWitness>, ForbidError> {
    if m == 0 || n == 0 {
        return Err(ForbidError::ZeroLeaves(m, n));
    }
    if !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(u, v).into());
    }
    Ok(witness_at(g, u, v, m, n))
}

/// First copy of `S_{m,n}` over edges in sorted order, each tried in both orientations.
pub fn contains_double_star(g: &Graph, m: usize, n: usize) -> Result<Option<DoubleStarWitness>, ForbidError> {
    if m == 0 || n == 0 {
        return Err(ForbidError::ZeroLeaves(m, n));
    }
    Ok(find_double_star(g, DoubleStar::new(m, n)))
}

pub fn find_double_star(g: &Graph, p: DoubleStar) -> Option<DoubleStarWitness> {
    for (u, v) in g.edges() {
        if let Some(w) = witness_at(g, u, v, p.m, p.n) {
            return Some(w);
        }
        if p.m != p.n {
            if let Some(w) = witness_at(g, v, u, p.m, p.n) {
                return Some(w);
            }
        }
    }
    None
}

/// Fast freeness test used by the enumerator.
pub fn is_free_of(g: &Graph, p: DoubleStar) -> bool {
    let need = p.m.min(p.n) + 1;
    let need_other = p.m.max(p.n) + 1;
    for u in 0..g.n() {
        let du = g.degree(u);
        if du < need {
            continue;
        }
        // only look at edges once, from the endpoint with the larger index
        for v in VertexSet(g.row(u) & ((1u64 << u) - 1)) {
            let dv = g.degree(v);
            if du.max(dv) < need_other || du.min(dv) < need {
                continue;
            }
            if feasible_at(g, u, v, p.m, p.n) || feasible_at(g, v, u, p.m, p.n) {
                return false;
            }
        }
    }
    true
}

/// Is there a copy of `p` using the vertex `x` or one of its edges?
/// Used after adding vertex `x` to a `p`-free graph.
pub(crate) fn creates_double_star_at(g: &Graph, x: usize, p: DoubleStar) -> bool {
    // a new copy uses x as a backbone end or as a leaf, so its backbone has
    // an endpoint in N[x]
    let closed = g.nbrs(x).with(x);
    for u in closed {
        for v in g.nbrs(u) {
            if closed.contains(v) && v > u {
                continue;
            }
            if feasible_at(g, u, v, p.m, p.n) || feasible_at(g, v, u, p.m, p.n) {
                return true;
            }
        }
    }
    false
}

/// Triangle count on edge `uv` and whether `S_{2,5}` sits on `uv` in either orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeTriangles {
    pub triangles: usize,
    pub s25_forcing: bool,
}

pub fn triangles_on_edge_bounds(g: &Graph, u: usize, v: usize) -> Result<EdgeTriangles, ForbidError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(u, v).into());
    }
    let triangles = g.common_neighbors(u, v)?.len();
    let s25_forcing = feasible_at(g, u, v, 2, 5) || feasible_at(g, v, u, 2, 5);
    Ok(EdgeTriangles { triangles, s25_forcing })
}

/// Exhaustive search over oriented backbones and all leaf subsets.
pub fn brute_force_contains(g: &Graph, m: usize, n: usize) -> bool {
    for (a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            let nu = g.nbrs(u).without(v).to_vec();
            let nv = g.nbrs(v).without(u).to_vec();
            let mut found = false;
            for_each_subset(&nu, m, &mut |lu| {
                if found {
                    return;
                }
                for_each_subset(&nv, n, &mut |lv| {
                    if lu & lv == 0 {
                        found = true;
                    }
                });
            });
            if found {
                return true;
            }
        }
    }
    false
}

fn for_each_subset(items: &[usize], k: usize, f: &mut impl FnMut(u64)) {
    fn go(items: &[usize], k: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if k == 0 {
            f(acc);
            return;
        }
        if items.len() < k {
            return;
        }
        go(&items[1..], k - 1, acc | 1 << items[0], f);
        go(&items[1..], k, acc, f);
    }
    go(items, k, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::icosahedron;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::build(leaves + 1, &edges).unwrap()
    }

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    #[test]
    fn at_edge_examples() {
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(double_star_at_edge(&p3, 0, 1, 1, 1).unwrap(), None);
        let s7 = star(7);
        // centre as the degree-6 side: u = leaf 1 carries m=2 leaves, v = centre carries 5
        assert_eq!(double_star_at_edge(&s7, 1, 0, 2, 5).unwrap(), None);
        let ico = icosahedron();
        for (u, v) in ico.edges() {
            assert_eq!(double_star_at_edge(&ico, u, v, 2, 5).unwrap(), None);
            assert_eq!(double_star_at_edge(&ico, v, u, 2, 5).unwrap(), None);
        }
    }

    #[test]
    fn at_edge_errors() {
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(double_star_at_edge(&p3, 0, 2, 1, 1), Err(ForbidError::Graph(GraphError::NotAnEdge(0, 2))));
        assert_eq!(double_star_at_edge(&p3, 0, 1, 0, 1), Err(ForbidError::ZeroLeaves(0, 1)));
        assert_eq!(contains_double_star(&p3, 1, 0), Err(ForbidError::ZeroLeaves(1, 0)));
    }

    #[test]
    fn deterministic_witness_prefers_exclusive_then_lowest() {
        // u=0 with exclusive {2}, v=1 with exclusive {5,6}, shared {3,4}
        let g = Graph::build(7, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (1, 5), (1, 6)]).unwrap();
        let w = double_star_at_edge(&g, 0, 1, 2, 3).unwrap().unwrap();
        assert_eq!(w.leaves_u.to_vec(), vec![2, 3]);
        assert_eq!(w.leaves_v.to_vec(), vec![4, 5, 6]);
        assert_eq!(w.edges().len(), 6);
    }

    #[test]
    fn containment_examples() {
        assert_eq!(contains_double_star(&icosahedron(), 2, 5).unwrap(), None);
        assert_eq!(contains_double_star(&Graph::complete(7).unwrap(), 2, 5).unwrap(), None);
        assert!(!brute_force_contains(&Graph::complete(7).unwrap(), 2, 5));
        assert!(brute_force_contains(&Graph::complete(9).unwrap(), 2, 5));

        // a degree-8 vertex whose neighbours all have degree >= 3
        let mut edges: Vec<_> = (1..=8).map(|i| (0, i)).collect();
        for i in 1..=8 {
            edges.push((i, i % 8 + 1));
        }
        let wheel = Graph::build(9, &edges).unwrap();
        assert!(wheel.min_degree() >= 3);
        let w = contains_double_star(&wheel, 2, 5).unwrap().unwrap();
        assert!(w.is_valid_in(&wheel, 2, 5));
    }

    #[test]
    fn triangle_bounds_example() {
        let ico = icosahedron();
        let t = triangles_on_edge_bounds(&ico, 0, 1).unwrap();
        assert_eq!(t, EdgeTriangles { triangles: 2, s25_forcing: false });
        assert!(triangles_on_edge_bounds(&ico, 0, 11).is_err());
    }

    #[test]
    fn oracle_equivalence_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(41);
        let patterns = [(1, 1), (2, 2), (2, 3), (2, 4), (2, 5)];
        for _ in 0..600 {
            let n = rng.gen_range(2..=9);
            let p = rng.gen_range(0.2..0.9);
            let g = random_graph(&mut rng, n, p);
            for &(m, k) in &patterns {
                let fast = contains_double_star(&g, m, k).unwrap();
                assert_eq!(fast.is_some(), brute_force_contains(&g, m, k), "{g:?} S_{m},{k}");
                assert_eq!(is_free_of(&g, DoubleStar::new(m, k)), fast.is_none());
                if let Some(w) = fast {
                    assert!(w.is_valid_in(&g, m, k));
                }
            }
        }
    }

    #[test]
    fn feasibility_matches_subset_search_per_edge() {
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..300 {
            let n = rng.gen_range(3..=9);
            let g = random_graph(&mut rng, n, 0.6);
            for (u, v) in g.edges() {
                for (m, k) in [(1, 1), (1, 3), (2, 5), (3, 2)] {
                    let nu = g.nbrs(u).without(v).to_vec();
                    let nv = g.nbrs(v).without(u).to_vec();
                    let mut brute = false;
                    for_each_subset(&nu, m, &mut |lu| for_each_subset(&nv, k, &mut |lv| brute |= lu & lv == 0));
                    assert_eq!(feasible_at(&g, u, v, m, k), brute);
                }
            }
        }
    }

    #[test]
    fn local_detection_after_vertex_addition() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..2000 {
            let n = rng.gen_range(2..=10);
            let p = rng.gen_range(0.2..0.7);
            let g = random_graph(&mut rng, n, p);
            let parent = g.delete_vertex(n - 1).unwrap();
            for p in [DoubleStar::new(1, 1), DoubleStar::new(2, 3), DoubleStar::S25] {
                if is_free_of(&parent, p) {
                    assert_eq!(creates_double_star_at(&g, n - 1, p), !is_free_of(&g, p));
                }
            }
        }
    }

    #[test]
    fn monotone_under_edge_addition() {
        let mut rng = StdRng::seed_from_u64(53);
        for _ in 0..300 {
            let n = rng.gen_range(3..=9);
            let g = random_graph(&mut rng, n, 0.5);
            for p in [DoubleStar::new(2, 2), DoubleStar::S25] {
                if !is_free_of(&g, p) {
                    for u in 0..n {
                        for v in u + 1..n {
                            if !g.has_edge(u, v) {
                                assert!(!is_free_of(&g.with_edge(u, v).unwrap(), p));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn low_max_degree_is_s25_free() {
        let mut rng = StdRng::seed_from_u64(59);
        let mut checked = 0;
        while checked < 300 {
            let g = random_graph(&mut rng, 9, 0.45);
            if g.max_degree() <= 5 {
                assert_eq!(contains_double_star(&g, 2, 5).unwrap(), None);
                checked += 1;
            }
        }
    }
}
