use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: expected {expected}, got {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("a polynomial needs at least one variable")]
    NoVariables,

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("malformed polynomial document: {0}")]
    Malformed(String),

    #[error("time variable: {0}")]
    TimeSlot(String),
}
