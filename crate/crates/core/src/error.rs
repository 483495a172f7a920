use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatroidError {
    /// A query referenced an element that is not addressable by the oracle.
    #[error("malformed query: {0}")]
    MalformedQuery(String),

    /// A round was submitted with no queries in it.
    #[error("empty query batch submitted (algorithm bug)")]
    EmptyBatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("weights missing for {missing} element(s), first missing: {first}")]
    IncompleteWeights { missing: usize, first: String },

    #[error("invalid weight for {name}: {reason}")]
    InvalidWeight { name: String, reason: String },

    /// Contraction by a dependent set was requested.
    #[error("invalid contraction: pinned set {0} is dependent")]
    InvalidContraction(String),

    #[error("resource guard: ground set has {n} elements, limit is {limit} (override with --max-n)")]
    ResourceGuard { n: usize, limit: usize },

    /// A basis-search procedure returned something that is not a basis.
    #[error("faulty basis oracle: {0}")]
    FaultyOracle(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("too many elements: {0} (at most 64 are supported)")]
    TooLarge(usize),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for MatroidError {
    fn from(e: std::io::Error) -> Self {
        MatroidError::Io(e.to_string())
    }
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;
