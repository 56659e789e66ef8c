use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation would materialise more tree vertices than allowed.
    #[error("resource cap exceeded: predicted {predicted} ball vertices, cap is {cap}")]
    ResourceCap { predicted: u128, cap: u128 },

    /// Raised when a mathematical guarantee the algorithms rely on fails to hold.
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    /// Degree-one vertices whose group equals the incident edge group; they
    /// should be collapsed before asking about ends.
    #[error("trivial vertices present: {}", .0.join(", "))]
    TrivialVertices(Vec<String>),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
