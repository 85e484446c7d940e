use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("containment failure: {0}")]
    Containment(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {what} needs {needed}, budget {budget}")]
    Resource {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("axiom violated: {axiom} at {witness:?}")]
    AxiomViolation { axiom: String, witness: Vec<usize> },

    #[error("theorem check failed: {check}: {detail}")]
    TheoremViolation { check: String, detail: String },

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
}

impl Error {
    /// Process exit code used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Format(_) | Error::InvalidInput(_) | Error::DimensionMismatch { .. } => 2,
            Error::Resource { .. } => 3,
            _ => 1,
        }
    }

    pub fn theorem(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
