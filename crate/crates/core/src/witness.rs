//! Built-in extremal witnesses.

use crate::graph::Graph;

/// The icosahedron: the 5-regular planar triangulation on 12 vertices.
///
/// Vertex 0 is joined to the ring `1..=5`, vertex 11 to the ring `6..=10`,
/// and ring vertex `i` is joined to `5 + i` and `6 + i mod 5`.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 1..=5 {
        let next = i % 5 + 1;
        edges.push((0, i));
        edges.push((i, next));
        edges.push((i + 5, next + 5));
        edges.push((i, i + 5));
        edges.push((i, next + 5));
        edges.push((11, i + 5));
    }
    Graph::build(12, &edges).expect("icosahedron edge list is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let g = icosahedron();
        assert_eq!((g.n(), g.m()), (12, 30));
        let h = g.degree_histogram();
        assert_eq!(h.count(5), 12);
        assert_eq!((h.min_degree(), h.max_degree()), (5, 5));
        for v in 0..12 {
            assert_eq!(g.neighbors(v).unwrap().len(), 5);
        }
        assert!(g.is_connected().unwrap());
        assert!(g.is_bridgeless());
    }

    #[test]
    fn every_edge_is_in_two_triangles() {
        let g = icosahedron();
        for (u, v) in g.edges() {
            assert_eq!(g.common_neighbors(u, v).unwrap().len(), 2);
        }
    }

    #[test]
    fn delete_any_vertex() {
        let g = icosahedron();
        for v in 0..12 {
            let h = g.delete_vertex(v).unwrap();
            assert_eq!((h.n(), h.m()), (11, 25));
        }
    }

    #[test]
    fn neighbourhood_to_rest() {
        let g = icosahedron();
        for v in 0..12 {
            let nv = g.nbrs(v);
            let rest = g.vertices().difference(nv).without(v);
            assert_eq!(g.edges_between(nv, rest).unwrap(), 10);
        }
    }
}
