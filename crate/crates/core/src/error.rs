use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input violates a type invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Argument outside the domain where the quantity is defined (e.g. a point of E).
    #[error("domain error: {0}")]
    Domain(String),

    /// Closed gap or a point where the Floquet multipliers collide.
    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("quadrature did not converge (last two estimates {previous:e}, {last:e})")]
    Quadrature { previous: f64, last: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("contour failure on box [{lo}, {hi}]: {reason}")]
    Contour {
        lo: Complex64,
        hi: Complex64,
        reason: String,
    },

    /// Request is well-formed but not meaningful for the given data.
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Invalid(_) => "invalid",
            Error::Domain(_) => "domain",
            Error::Degenerate(_) => "degenerate",
            Error::Quadrature { .. } => "quadrature",
            Error::Numeric(_) => "numeric",
            Error::Contour { .. } => "contour",
            Error::Usage(_) => "usage",
        }
    }
}
