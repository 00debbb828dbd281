use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[non_exhaustive]
pub enum Error {
    /// Two sign vectors (or a vector and a ground set) disagree in length.
    #[error("dimension mismatch: expected {expected} entries, got {found}")]
    Dimension { expected: usize, found: usize },

    /// An element label or index that is not part of the ground set.
    #[error("unknown element: {0}")]
    Domain(String),

    /// A sign vector that was required to belong to some set does not.
    #[error("{what} is not a member of {set}")]
    Membership { what: String, set: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Validation(String),

    /// Parse failure with 1-based line context.
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("complex is empty")]
    EmptyComplex,

    #[error("vertex collision in join: {0}")]
    VertexCollision(String),
}

impl Error {
    pub(crate) fn parse(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }
}
