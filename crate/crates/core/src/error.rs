use thiserror::Error;

/// Errors raised anywhere in the walk library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },

    #[error("division by zero in {0}")]
    DivisionByZero(String),

    #[error("{0}")]
    OutOfRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ResidueTooLarge { residue: f64, tolerance: f64 },

    #[error("eigenvalue branch through 1 is degenerate: {0}")]
    DegenerateEigenvalue(String),

    #[error("parameters admit no reduced 2x2 generator (s0*c1 = {s0c1:e}, c0 = {c0:e})")]
    NotReducible { s0c1: f64, c0: f64 },

    #[error("formula requires {expected}, but parameters are in {found}")]
    WrongCase {
        expected: &'static str,
        found: String,
    },

    #[error("negative radicand {0:e} in diffusion constant")]
    NegativeRadicand(f64),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
