//! Error type shared across the crate.

/// Errors produced by constructors and numerical routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A parameter violates one of the validity constraints. The message
    /// names the violated inequality.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Exact polynomial division left a remainder above tolerance. This
    /// signals a transcription bug or invalid parameters, never a rounding
    /// issue at valid desk scale.
    #[error("division residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    DivisionResidual { residual: f64, tol: f64 },

    /// An iterative solve (quadrature nodes) failed to converge.
    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    /// A hypergeometric bracket matrix is numerically singular.
    #[error("singular bracket matrix at series index {0}")]
    SingularBracket(usize),

    /// A closed-form scale matrix is numerically singular.
    #[error("singular scale matrix: {0}")]
    SingularScale(String),

    /// Input is inside the guarded degenerate region (e.g. kernel at x == y).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
