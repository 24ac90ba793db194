//! The infinite families `G_γ`, `G_{γ+n}` and the variant without diagonal
//! edges, handled symbolically over ordinal coordinates.

mod bounds;
mod certificate;
mod families;
mod graph;
mod refute;
pub mod sampler;
mod simulate;
mod strategy;

use thiserror::Error;

pub use bounds::{eta_bounds, rho, rho_with_source, ClaimId, OrdinalBound};
pub use certificate::{
    certify, Certificate, CertifyConfig, CertifyError, ChallengeSampler, Claim, DescentStats, NodeKind,
    ProofWitnesses, Step, Violation, WitnessSource,
};
pub use families::{Family, Witness};
pub use graph::{SymVertex, SymbolicGraph};
pub use refute::{refute_isolated_cop, IsolatedCopRefutation};
pub use sampler::StratifiedSampler;
pub use simulate::{
    simulate, Axis, BudgetRobber, ChaseSegment, ConstructiveCop, CopPolicy, GreedyCop, PlayTrace, RandomRobber,
    RobberPolicy, Round, SimOptions, StayRobber,
};
pub use strategy::{
    cop_strategy, escape_diagonal, escape_min_coordinate, escape_tail_pair, greedy_move, robber_strategy, Phase,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("gamma must be an infinite limit ordinal, got {0}")]
    NotLimit(String),
    #[error("the variant without diagonal edges takes no tail")]
    VariantWithTail,
    #[error("vertex {0} is not in the graph")]
    NotInGraph(String),
    #[error("bad vertex {0}")]
    VertexParse(String),
    #[error("{family}: hypothesis fails for ({u}, {v}): {clause}")]
    Hypothesis { family: String, u: String, v: String, clause: String },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("game already over: cop is on the robber")]
    AlreadyCaptured,
    #[error("cop and robber start on the same vertex")]
    SameStart,
    #[error("illegal {player} move {from} -> {to}")]
    RuleViolation { player: String, from: String, to: String },
}
