use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unrecognized Dynkin type '{0}' (expected e.g. A2, B3, G2)")]
    UnknownType(String),
    #[error("invalid rank {rank} for family {family}: {reason}")]
    InvalidRank {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("node index {index} out of range for rank {rank}")]
    NodeOutOfRange { index: usize, rank: usize },
    #[error("the set of crossed nodes must be nonempty")]
    EmptyCrossed,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("guardrail exceeded: {what} is {value}, limit {limit}")]
    Guardrail {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("not a character of the Levi factor: {0}")]
    InvalidCharacter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("component not found at filtration level {level}")]
    TargetNotFound { level: usize },
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
