//! Graph constructions: the Cayley graphs S(k, q), the bipartite graphs
//! BΓ_k with their Wenger, linearized Wenger and D(4, q) specialisations,
//! and distance-two graphs.

mod bipartite;
mod graph;
mod sgraph;

pub use bipartite::{
    build_bipartite, distance_two, BipartiteGraph, BipartiteSpec, DistanceTwo, MPoly, Monomial,
    Side,
};
pub use graph::{Components, EdgeFormat, Graph};
pub use sgraph::{build_s_graph, SGraph, SGraphSpec, SpecFile, VectorCodec, DEFAULT_VERTEX_CAP};
