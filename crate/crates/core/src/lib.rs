//! Planar Turán numbers of double stars: containment tests, planarity,
//! degree-pattern predicates, exact bound arithmetic and isomorphism-free
//! exhaustive search over small planar graphs.

pub mod bounds;
pub mod canon;
pub mod cli;
pub mod enumerate;
pub mod forbid;
pub mod graph;
pub mod graph6;
pub mod planarity;
pub mod report;
pub mod structure;
pub mod witness;

pub use bounds::{turan_edge_cap, turan_verdict, BoundVerdict, BoundsError};
pub use canon::{canonical_form, canonical_graph, CanonicalForm};
pub use enumerate::{
    build_icosahedron, enumerate, ex_search, EnumOptions, EnumerateError, EnumerationConstraints, ExtremalRecord,
    SearchMode,
};
pub use forbid::{contains_double_star, is_free_of, DoubleStar, DoubleStarWitness, ForbidError};
pub use graph::{DegreeHistogram, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use planarity::is_planar;
pub use structure::{hypothesis_class, FeatureKind, HypothesisFlags, StructuralFeature};
