use thiserror::Error;

/// Errors produced by the algebra, geometry and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands were built over different fields, rings or dimensions.
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("element {0} is not a unit")]
    NotAUnit(String),

    /// Input violates a documented precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A request would enumerate more objects than the configured cap allows.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A textual spec or element failed to parse; `token` is the offending piece.
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },
}

impl Error {
    pub fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
