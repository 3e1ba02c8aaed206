use thiserror::Error;

/// Errors raised by graph construction, parsing, and the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdsError {
    /// A precondition of the called operation does not hold.
    #[error("usage error: {0}")]
    Usage(String),
    /// graph6 input could not be decoded.
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    /// Edge-list input could not be decoded.
    #[error("edge list parse error at line {line}: {message}")]
    EdgeList { line: usize, message: String },
    /// A size guard or retry budget was exceeded.
    #[error("capacity error: {0}")]
    Capacity(String),
}

impl EdsError {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        EdsError::Usage(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        EdsError::Capacity(msg.into())
    }

    /// True for errors caused by bad input (as opposed to capacity limits).
    pub fn is_input_error(&self) -> bool {
        !matches!(self, EdsError::Capacity(_))
    }
}

pub type Result<T, E = EdsError> = std::result::Result<T, E>;
