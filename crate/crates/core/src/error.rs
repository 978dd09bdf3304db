use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("search exhausted: no candidate with norm <= {bound}")]
    SearchExhausted { bound: String },

    #[error("target is not in the ideal {ideal}")]
    Unsolvable { ideal: String },

    #[error("vector is not primitive: content ideal {content}")]
    Content { content: String },

    #[error("vectors are linearly dependent")]
    Rank,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size mismatch: {0}")]
    Size(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("certification failed in leg `{leg}`: {reason}")]
    CertificationFailed { leg: String, reason: String },

    #[error("classification error: {0}")]
    Classification(String),

    #[error("internal consistency violation: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code used by the CLI and mirrored by the C ABI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) => 2,
            Error::Capacity(_) | Error::SearchExhausted { .. } => 3,
            Error::Consistency(_) => 4,
            _ => 1,
        }
    }
}
