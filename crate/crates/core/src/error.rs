use thiserror::Error;

/// Errors produced by toolkit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input fell outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A bracketing search was given endpoints that do not straddle the target.
    #[error("bracket error: {0}")]
    Bracket(String),
    /// An iterative search failed to verify or settle on an answer.
    #[error("convergence error: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
