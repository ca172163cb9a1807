use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected a class of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("adjunction parity violated by class {class}: D*D + K*D must be even")]
    ParityViolation { class: String },

    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("intersection budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("plan does not separate curves {0} and {1}")]
    NotSeparated(String, String),

    #[error("cannot decide which result applies; missing declarations: {}", missing.join(", "))]
    UndecidableDispatch { missing: Vec<String> },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
