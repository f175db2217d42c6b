use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { offset: usize, name: String },

    #[error("evaluation domain error: {0}")]
    Domain(String),

    #[error("unbound parameter `{0}`")]
    UnboundParam(String),

    #[error("invalid interval: {0}")]
    Interval(String),

    #[error("quadrature did not converge within {0} subdivisions")]
    NonConvergence(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),

    #[error("`{id}` is out of scope: {reason}")]
    OutOfScope { id: String, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("identity check failed: {0}")]
    Identity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
