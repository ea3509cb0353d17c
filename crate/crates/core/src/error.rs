use thiserror::Error;

/// Errors raised by the library.
///
/// Variants map onto the command-line exit codes through [`Error::exit_code`]
/// and onto machine-readable codes through [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot remove a vertex from a {0}-vertex hypergraph")]
    Underflow(usize),

    #[error("invalid cardinality vector: {0}")]
    InvalidCardinalities(String),

    #[error("invalid sign vector: {0}")]
    InvalidSignVector(String),

    #[error("{what} = {requested} exceeds the cap of {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no transition is defined for class {0}")]
    UndefinedTransition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("precondition mismatch: {0}")]
    PreconditionMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Underflow(_) => "underflow",
            Error::InvalidCardinalities(_) => "invalid_cardinalities",
            Error::InvalidSignVector(_) => "invalid_sign_vector",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::Precondition(_) => "precondition",
            Error::UndefinedTransition(_) => "undefined_transition",
            Error::Parse(_) => "parse",
            Error::InconsistentInput(_) => "inconsistent_input",
            Error::PreconditionMismatch(_) => "precondition_mismatch",
            Error::Consistency(_) => "consistency",
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit { .. } => 3,
            Error::Consistency(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
