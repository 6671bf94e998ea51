//! Degree-pattern features (k-l edges, k-l-s paths) and the predicates built on them.

use serde::{Deserialize, Serialize};

use crate::forbid::{is_free_of, DoubleStar};
use crate::graph::{Graph, VertexSet};

/// A degree pattern: an edge with end degrees `{k, l}` or a path whose three
/// vertices have degrees `k, l, s` in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureKind {
    KLEdge(usize, usize),
    KLSPath(usize, usize, usize),
}

impl FeatureKind {
    pub fn present_in(&self, g: &Graph) -> bool {
        match *self {
            FeatureKind::KLEdge(k, l) => has_kl_edge(g, k, l),
            FeatureKind::KLSPath(k, l, s) => has_kls_path(g, k, l, s),
        }
    }

    pub fn find_in(&self, g: &Graph) -> Vec<StructuralFeature> {
        match *self {
            FeatureKind::KLEdge(k, l) => find_kl_edges(g, k, l),
            FeatureKind::KLSPath(k, l, s) => find_kls_paths(g, k, l, s),
        }
    }
}

impl std::fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FeatureKind::KLEdge(k, l) => write!(f, "{k}-{l}"),
            FeatureKind::KLSPath(k, l, s) => write!(f, "{k}-{l}-{s}"),
        }
    }
}

impl std::str::FromStr for FeatureKind {
    type Err = String;

    /// `"6-6"` is an edge pattern, `"6-5-6"` a path pattern.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Result<Vec<usize>, _> = s.split('-').map(str::parse).collect();
        match parts.map_err(|e| format!("bad degree in {s:?}: {e}"))?.as_slice() {
            [k, l] => Ok(FeatureKind::KLEdge(*k, *l)),
            [k, l, t] => Ok(FeatureKind::KLSPath(*k, *l, *t)),
            _ => Err(format!("expected k-l or k-l-s, got {s:?}")),
        }
    }
}

/// An occurrence of a [`FeatureKind`]. Edge locations are `[u, v]` with
/// `d(u) = k`, path locations `[u, v, w]` with `d(u) = k`, `d(v) = l`, `d(w) = s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructuralFeature {
    pub kind: FeatureKind,
    pub location: Vec<usize>,
}

fn degree_class(g: &Graph, d: usize) -> u64 {
    let mut s = 0;
    for v in 0..g.n() {
        if g.degree(v) == d {
            s |= 1 << v;
        }
    }
    s
}

/// All edges with end degrees `{k, l}`, each once. For `k = l` the location is
/// ordered `u < v`.
pub fn find_kl_edges(g: &Graph, k: usize, l: usize) -> Vec<StructuralFeature> {
    let dk = degree_class(g, k);
    let dl = degree_class(g, l);
    let mut out = Vec::new();
    for u in VertexSet(dk) {
        for v in VertexSet(g.row(u) & dl) {
            if k == l && v < u {
                continue;
            }
            out.push(StructuralFeature { kind: FeatureKind::KLEdge(k, l), location: vec![u, v] });
        }
    }
    out
}

pub fn has_kl_edge(g: &Graph, k: usize, l: usize) -> bool {
    let dl = degree_class(g, l);
    VertexSet(degree_class(g, k)).iter().any(|u| g.row(u) & dl != 0)
}

/// All paths `u - v - w` with `d(u) = k`, `d(v) = l`, `d(w) = s`. For `k = s`
/// each path is listed once with `u < w`.
pub fn find_kls_paths(g: &Graph, k: usize, l: usize, s: usize) -> Vec<StructuralFeature> {
    let dk = degree_class(g, k);
    let ds = degree_class(g, s);
    let mut out = Vec::new();
    for v in VertexSet(degree_class(g, l)) {
        for u in VertexSet(g.row(v) & dk) {
            for w in VertexSet(g.row(v) & ds) {
                if w == u || (k == s && w < u) {
                    continue;
                }
                out.push(StructuralFeature { kind: FeatureKind::KLSPath(k, l, s), location: vec![u, v, w] });
            }
        }
    }
    out
}

pub fn has_kls_path(g: &Graph, k: usize, l: usize, s: usize) -> bool {
    let dk = degree_class(g, k);
    let ds = degree_class(g, s);
    VertexSet(degree_class(g, l)).iter().any(|v| {
        let a = g.row(v) & dk;
        let b = g.row(v) & ds;
        a != 0 && b != 0 && (a | b).count_ones() >= 2
    })
}

/// No edge joins two degree-6 vertices.
pub fn degree6_set_independent(g: &Graph) -> bool {
    !has_kl_edge(g, 6, 6)
}

/// No two degree-6 vertices share a neighbour.
pub fn degree6_common_neighbor_free(g: &Graph) -> bool {
    let six = VertexSet(degree_class(g, 6)).to_vec();
    six.iter().enumerate().all(|(i, &a)| six[i + 1..].iter().all(|&b| g.row(a) & g.row(b) == 0))
}

/// For one degree-6 vertex: does it have a neighbour of degree at most 4?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Degree4Verdict {
    pub vertex: usize,
    pub has_low_neighbor: bool,
}

/// One verdict per degree-6 vertex. Hypotheses are the caller's business.
pub fn check_claim_degree4(g: &Graph) -> Vec<Degree4Verdict> {
    VertexSet(degree_class(g, 6))
        .iter()
        .map(|u| Degree4Verdict { vertex: u, has_low_neighbor: g.nbrs(u).iter().any(|w| g.degree(w) <= 4) })
        .collect()
}

/// Flags describing where a graph sits relative to the degree-6 lemma hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct HypothesisFlags {
    pub has_66_edge: bool,
    pub has_656_path: bool,
    pub has_646_path: bool,
    pub has_636_path: bool,
    pub has_33_edge: bool,
    pub bridgeless: bool,
    pub min_deg3: bool,
    pub max_deg: usize,
    pub connected: bool,
}

impl HypothesisFlags {
    /// Connected, bridgeless, δ ≥ 3 and Δ = 6.
    pub fn meets_base_hypotheses(&self) -> bool {
        self.connected && self.bridgeless && self.min_deg3 && self.max_deg == 6
    }

    /// Any of the four degree-6 configurations.
    pub fn has_any_lemma_feature(&self) -> bool {
        self.has_66_edge || self.has_656_path || self.has_646_path || self.has_636_path
    }
}

pub fn hypothesis_class(g: &Graph) -> HypothesisFlags {
    HypothesisFlags {
        has_66_edge: has_kl_edge(g, 6, 6),
        has_656_path: has_kls_path(g, 6, 5, 6),
        has_646_path: has_kls_path(g, 6, 4, 6),
        has_636_path: has_kls_path(g, 6, 3, 6),
        has_33_edge: has_kl_edge(g, 3, 3),
        bridgeless: g.is_bridgeless(),
        min_deg3: g.min_degree() >= 3,
        max_deg: g.max_degree(),
        connected: g.n() > 0 && g.component_count() == 1,
    }
}

/// Hypotheses of the degree-4 claim: the base hypotheses, `S_{2,5}`-free, and
/// none of the four degree-6 configurations.
pub fn satisfies_degree4_hypotheses(g: &Graph, flags: &HypothesisFlags) -> bool {
    flags.meets_base_hypotheses() && !flags.has_any_lemma_feature() && is_free_of(g, DoubleStar::S25)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::witness::icosahedron;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Two 6-hubs 0 and 1 with private leaves and one shared neighbour 2 of degree 3.
    /// Each hub gets five private neighbours that form a cycle.
    pub(crate) fn two_hubs_sharing_a_degree3_vertex() -> Graph {
        let mut edges = vec![(0, 2), (1, 2)];
        // vertex 2 needs one more neighbour to reach degree 3
        edges.push((2, 13));
        for (hub, first) in [(0usize, 3usize), (1, 8)] {
            for i in 0..5 {
                edges.push((hub, first + i));
                edges.push((first + i, first + (i + 1) % 5));
            }
        }
        Graph::build(14, &edges).unwrap()
    }

    fn hub_with_cubic_neighbours() -> Graph {
        // vertex 0 adjacent to 1..=6, which form a 6-cycle; each rim vertex then has degree 3
        let mut edges: Vec<_> = (1..=6).map(|i| (0, i)).collect();
        for i in 1..=6 {
            edges.push((i, i % 6 + 1));
        }
        Graph::build(7, &edges).unwrap()
    }

    #[test]
    fn kl_edge_examples() {
        let ico = icosahedron();
        assert_eq!(find_kl_edges(&ico, 5, 5).len(), 30);
        assert!(find_kl_edges(&ico, 6, 6).is_empty());
        let mut edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        edges.push((3, 4));
        let k4_pendant = Graph::build(5, &edges).unwrap();
        let found = find_kl_edges(&k4_pendant, 4, 1);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].location, vec![3, 4]);
    }

    #[test]
    fn kls_path_examples() {
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let found = find_kls_paths(&p3, 1, 2, 1);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].location, vec![0, 1, 2]);
        assert!(find_kls_paths(&icosahedron(), 6, 5, 6).is_empty());
        let hubs = two_hubs_sharing_a_degree3_vertex();
        assert_eq!(hubs.degree(0), 6);
        assert_eq!(hubs.degree(1), 6);
        assert_eq!(hubs.degree(2), 3);
        let found = find_kls_paths(&hubs, 6, 3, 6);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].location, vec![0, 2, 1]);
    }

    #[test]
    fn degree6_predicates() {
        let ico = icosahedron();
        assert!(degree6_set_independent(&ico));
        assert!(!degree6_set_independent(&Graph::complete(7).unwrap()));
        let hubs = two_hubs_sharing_a_degree3_vertex();
        assert!(degree6_set_independent(&hubs));
        assert!(degree6_common_neighbor_free(&ico));
        assert!(!degree6_common_neighbor_free(&hubs));
        assert!(degree6_common_neighbor_free(&hub_with_cubic_neighbours()));
    }

    #[test]
    fn claim_degree4_examples() {
        assert!(check_claim_degree4(&icosahedron()).is_empty());
        let v = check_claim_degree4(&hub_with_cubic_neighbours());
        assert_eq!(v, vec![Degree4Verdict { vertex: 0, has_low_neighbor: true }]);
    }

    #[test]
    fn hypothesis_flags() {
        let ico = hypothesis_class(&icosahedron());
        assert_eq!(
            ico,
            HypothesisFlags {
                bridgeless: true,
                min_deg3: true,
                max_deg: 5,
                connected: true,
                ..HypothesisFlags::default()
            }
        );
        let p3 = hypothesis_class(&Graph::build(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(p3.connected && !p3.bridgeless && !p3.min_deg3);
        assert!(hypothesis_class(&two_hubs_sharing_a_degree3_vertex()).has_636_path);
    }

    #[test]
    fn feature_parsing() {
        assert_eq!("6-6".parse::<FeatureKind>().unwrap(), FeatureKind::KLEdge(6, 6));
        assert_eq!("6-5-6".parse::<FeatureKind>().unwrap(), FeatureKind::KLSPath(6, 5, 6));
        assert!("6".parse::<FeatureKind>().is_err());
        assert!("a-b".parse::<FeatureKind>().is_err());
    }

    #[test]
    fn finders_agree_with_brute_scans() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..400 {
            let n = rng.gen_range(2..=10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::build(n, &edges).unwrap();
            for k in 1..=6 {
                for l in 1..=6 {
                    let brute = g
                        .edges()
                        .into_iter()
                        .filter(|&(u, v)| {
                            let (a, b) = (g.degree(u), g.degree(v));
                            (a, b) == (k, l) || (a, b) == (l, k)
                        })
                        .count();
                    assert_eq!(find_kl_edges(&g, k, l).len(), brute);
                    assert_eq!(has_kl_edge(&g, k, l), brute > 0);
                    for s in [3, 6] {
                        let mut brute_paths = 0;
                        for u in 0..n {
                            for v in g.nbrs(u) {
                                for w in g.nbrs(v) {
                                    if w != u
                                        && g.degree(u) == k
                                        && g.degree(v) == l
                                        && g.degree(w) == s
                                        && (k != s || u < w)
                                    {
                                        brute_paths += 1;
                                    }
                                }
                            }
                        }
                        assert_eq!(find_kls_paths(&g, k, l, s).len(), brute_paths);
                        assert_eq!(has_kls_path(&g, k, l, s), brute_paths > 0);
                    }
                }
            }
            assert_eq!(degree6_set_independent(&g), find_kl_edges(&g, 6, 6).is_empty());
        }
    }
}
