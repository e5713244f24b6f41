//! Approximate minimum rooted and global cuts in capacitated digraphs.

pub mod capacity;
pub mod edge;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod maxflow;
pub mod search;
pub mod solve;
pub mod steiner;
pub mod vertex;

pub use capacity::{common_scale, Capacity, Rational};
pub use edge::{
    approx_global_edge_cut, approx_rooted_edge_cut, exact_global_edge_cut_oracle, exact_rooted_edge_cut_oracle,
    exact_small_edge_cut, CutMode, EdgeCut, ProbeConfig,
};
pub use error::{Error, Result};
pub use generate::{generate, Family, Generated, Planted};
pub use graph::{Arc, ArcCap, CutCertificate, DiGraph, Orientation, VertexId};
pub use io::{parse_graph, parse_graph_str, write_edge_graph, write_graph, write_vertex_graph, GraphKind, ParsedGraph};
pub use maxflow::{max_flow, MaxFlowResult};
pub use search::{SolveStats, SolverConfig};
pub use solve::{edge_cut, vertex_cut, Algorithm};
pub use steiner::{shrink_wrap, SteinerInstance, SteinerOutcome, TerminalOutcome};
pub use vertex::{
    approx_global_vertex_cut, approx_rooted_vertex_cut, exact_small_vertex_cut, exact_vertex_cut_oracle,
    split_transform, SplitMaps, VertexCapGraph, VertexCut, VertexCutCertificate,
};
