//! One entry point per problem, dispatching on cut mode and algorithm.

use std::fmt;
use std::str::FromStr;

use crate::edge::{
    approx_global_edge_cut, approx_rooted_edge_cut, exact_global_edge_cut_oracle, exact_rooted_edge_cut_oracle,
    exact_small_edge_cut, CutMode, EdgeCut,
};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Orientation};
use crate::search::{SolveStats, SolverConfig};
use crate::vertex::{
    approx_global_vertex_cut, approx_rooted_vertex_cut, exact_small_vertex_cut, exact_vertex_cut_oracle,
    VertexCapGraph, VertexCut,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Randomized (1+ε)-approximation.
    #[default]
    Approx,
    /// One max flow per candidate sink (vertex pair for vertex cuts).
    Exact,
    /// Exact for integer capacities, using the approximate machinery.
    ExactSmall,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Approx => "approx",
            Algorithm::Exact => "exact",
            Algorithm::ExactSmall => "exact-small",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        match s {
            "approx" => Ok(Algorithm::Approx),
            "exact" => Ok(Algorithm::Exact),
            "exact-small" | "exact_small" => Ok(Algorithm::ExactSmall),
            _ => Err(Error::InvalidParams(format!("unknown algorithm {s:?}"))),
        }
    }
}

pub fn edge_cut(g: &DiGraph, mode: CutMode, algorithm: Algorithm, cfg: &SolverConfig) -> Result<EdgeCut> {
    match (algorithm, mode) {
        (Algorithm::Approx, CutMode::Rooted(r)) => approx_rooted_edge_cut(g, r, cfg),
        (Algorithm::Approx, CutMode::Global) => approx_global_edge_cut(g, cfg),
        (Algorithm::Exact, CutMode::Rooted(r)) => Ok(EdgeCut {
            root: r,
            orientation: Orientation::Forward,
            cert: exact_rooted_edge_cut_oracle(g, r)?,
            stats: SolveStats::default(),
        }),
        (Algorithm::Exact, CutMode::Global) => exact_global_edge_cut_oracle(g),
        (Algorithm::ExactSmall, m) => exact_small_edge_cut(g, m, cfg),
    }
}

pub fn vertex_cut(g: &VertexCapGraph, mode: CutMode, algorithm: Algorithm, cfg: &SolverConfig) -> Result<VertexCut> {
    match (algorithm, mode) {
        (Algorithm::Approx, CutMode::Rooted(r)) => approx_rooted_vertex_cut(g, r, cfg),
        (Algorithm::Approx, CutMode::Global) => approx_global_vertex_cut(g, cfg),
        (Algorithm::Exact, m) => Ok(VertexCut {
            cert: exact_vertex_cut_oracle(g, m)?,
            roots: match m {
                CutMode::Rooted(r) => vec![r],
                CutMode::Global => Vec::new(),
            },
            stats: SolveStats::default(),
        }),
        (Algorithm::ExactSmall, m) => exact_small_vertex_cut(g, m, cfg),
    }
}
