//! Exact cops-and-robbers solving on finite graphs.

mod bitset;
mod graph;
pub mod io;
pub mod oracle;
mod solve;

use thiserror::Error;

pub use bitset::BitRow;
pub use graph::FiniteGraph;
pub use oracle::{naive_game_value, naive_game_values, GameValues, DEFAULT_MAX_VERTICES};
pub use solve::{
    dismantle, eta_all, optimal_cop_policy, policy_violations, recursion_violations, CopPolicy,
    Dismantling, Elimination, EtaTable, EtaValue,
};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("table has {table} vertices but graph has {graph}")]
    TableMismatch { graph: usize, table: usize },
    #[error("graph has {vertices} vertices, above the oracle limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}
