use thiserror::Error;

use crate::model::Violation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("instance has {clients} clients, above the solver guard of {guard} (raise it with --max-clients)")]
    TooManyClients { clients: usize, guard: usize },
    #[error("instance has {clients} clients; page placement supports at most {limit}")]
    PagePlacementLimit { clients: usize, limit: usize },
    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(String),
    #[error("invalid replica caps: {0}")]
    InvalidReplicaCaps(String),
    #[error("integer length units overflow 64 bits")]
    UnitOverflow,
    #[error("capacity state space overflows the state key")]
    StateSpaceTooLarge,
    #[error("client {client} exceeds its capacity by {slack}, above the allowed {bound}")]
    BlowupExceeded { client: usize, slack: String, bound: String },
    #[error("malformed assignment: {0}")]
    Structural(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
