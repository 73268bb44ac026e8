use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("algebra spec violates {axiom}: {detail}")]
    SpecError { axiom: String, detail: String },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("operator is not diagonalizable over the base field")]
    NotDiagonalizable,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("expansion too large: multidegree {multidegree} exceeds caps {caps}")]
    ExpansionTooLarge { multidegree: String, caps: String },
    #[error("parity error: {0}")]
    ParityError(String),
    #[error("budget exceeded: {needed} evaluations needed, budget is {budget}; use sampled mode")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("generator {generator} is not an identity: {detail}")]
    SoundnessFailure { generator: String, detail: String },
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
