use thiserror::Error;

/// Errors raised by the library surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("pole of {function} at z = {re} + {im}i")]
    Pole {
        function: &'static str,
        re: f64,
        im: f64,
    },

    #[error("degenerate Jacobi recurrence at degree {degree}: alpha + beta = {alpha_plus_beta_re} + {alpha_plus_beta_im}i")]
    DegenerateRecurrence {
        degree: usize,
        alpha_plus_beta_re: f64,
        alpha_plus_beta_im: f64,
    },

    #[error("n = {n} is not a bound state for m = {m} (requires n < m - 1/2)")]
    NotBoundState { m: f64, n: usize },

    #[error("state is not normalizable: {condition}")]
    NotNormalizable { condition: String },

    #[error("grid has {len} points, stencil needs at least {required}")]
    GridTooShort { len: usize, required: usize },

    #[error("non-finite value produced by {context} at x = {x}")]
    NonFinite { context: &'static str, x: f64 },

    #[error(
        "eigenvalue iteration did not converge for index {index} after {iterations} iterations"
    )]
    NoConvergence { index: usize, iterations: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
