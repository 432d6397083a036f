//! Exact desk-scale oracles and the elimination-forest validator.

mod bounds;
mod forest;
mod td_bb;
mod td_dp;
mod vc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounds::{greedy_clique_bound, heuristic_forest};
pub use forest::{
    check_clique_path_property, check_connected_ancestor_property, forest_depth, read_pace_tree,
    validate_forest, write_pace_tree, EliminationForest, ForestValidation,
};
pub use td_bb::{treedepth_branch_bound, BranchBoundOptions, DEFAULT_BB_BUDGET};
pub use td_dp::{treedepth_exact_dp, treedepth_exact_dp_with_cap, DEFAULT_DP_CAP};
pub use vc::{vertex_cover_exact, vertex_cover_exact_with_cap, VertexCover, DEFAULT_VC_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("parent pointers contain a cycle through vertex {0}")]
    Cycle(usize),
    #[error("vertex {vertex} has parent {parent}, which is out of range")]
    ParentOutOfRange { vertex: usize, parent: usize },
    #[error("{num_vertices} vertices exceed the {solver} cap of {cap}{hint}")]
    CapExceeded { solver: &'static str, num_vertices: usize, cap: usize, hint: &'static str },
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("vertex set does not induce a connected subgraph")]
    Disconnected,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("forest is not a valid elimination forest: {0}")]
    InvalidForest(String),
    #[error("malformed tree file: {0}")]
    TreeFormat(String),
}

/// Treedepth value with certificate and proof status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdResult {
    /// Depth of `certificate`.
    pub depth: usize,
    pub certificate: EliminationForest,
    /// True when `depth` is proven optimal.
    pub exact: bool,
    pub lower_bound: usize,
}
