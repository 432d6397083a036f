//! Reduction laboratory for the SAT → vertex cover → treedepth pipeline.
//!
//! The crate builds the clause–variable graph `G(φ, p)`, the clique gadget
//! that turns a vertex-cover question on a tripartite graph into a treedepth
//! question, and exact desk-scale oracles (MAX-SAT enumeration, minimum
//! vertex cover, treedepth) that check the closed-form identities relating
//! them.

pub mod cnf;
pub mod graph;
pub mod hardness;
pub mod harness;
pub mod reduction;
pub mod solvers;

mod seed;

pub use cnf::{CnfError, CnfFormula, Literal, Valuation};
pub use graph::{GraphError, LabeledGraph, Tripartition, VertexLabel, VertexSet};
pub use reduction::{ClauseVariableGraph, GadgetGraph, ReductionError, ReductionParams};
pub use seed::instance_seed;
pub use solvers::{EliminationForest, SolverError, TdResult};

#[cfg(test)]
#[path = "../tests/common/oracles.rs"]
mod oracles;
