//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a documented precondition (wrong dimension
    /// range, curvature outside `[0,1]`, ratio outside `(0,1]`, formula not
    /// applicable to the given `(v,w)`, …).  The message names the violated
    /// precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A required external constant is absent from the registry.  The
    /// message names the missing key.
    #[error("missing constant: {0}")]
    MissingConstant(String),

    /// A numerical method failed: non-finite value encountered, quadrature
    /// did not converge, or a root/minimum bracket collapsed.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
