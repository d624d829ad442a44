//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the squeezing calculators and the Fock verifier.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An input field failed validation (non-finite, negative amplitude, ...).
    #[error("invalid input: field `{field}` {reason}")]
    InvalidInput { field: &'static str, reason: String },

    /// The interaction time is too large for the closed forms to stay finite.
    #[error("interaction time {time} exceeds the maximum supported value {max} \
             (hyperbolic factors overflow double precision beyond it)")]
    TimeOverflow { time: f64, max: f64 },

    /// The Fock ladder required to honor the truncation policy exceeds the
    /// configured ceiling.
    #[error("required Fock cutoff {needed} exceeds the configured maximum {max}")]
    Capacity { needed: usize, max: usize },

    /// Evolution could not reach the requested truncation quality.
    #[error("Fock evolution did not converge: {details}")]
    Convergence { details: String },

    /// Principal-variance moments cannot supply a variance along an arbitrary
    /// direction; the full-covariance (Fock) path is required.
    #[error("direction ({0}, {1}, {2}) is not a principal axis; \
             analytic moments carry principal variances only — use the Fock verifier")]
    UnsupportedDirection(f64, f64, f64),

    /// Decibel conversion of a non-positive ratio.
    #[error("decibel conversion requires a positive factor, got {0}")]
    NonPositiveFactor(f64),

    /// The squeezing factor is identically >= 1 at zero interaction time, so
    /// there is nothing to optimize.
    #[error("no squeezing optimum exists at T = 0 (the factor is >= 1 everywhere)")]
    DegenerateOptimum,

    /// Stokes operator construction failed its own algebra check.
    #[error("operator self-check failed: interior residual {residual:.3e} exceeds {limit:.3e}")]
    SelfcheckFailed { residual: f64, limit: f64 },

    /// A sweep request asked for more grid points than the configured budget.
    #[error("sweep of {requested} points exceeds the {budget}-point budget for method `{method}`")]
    BudgetExceeded {
        requested: usize,
        budget: usize,
        method: String,
    },

    /// Malformed grid-axis specification for a sweep.
    #[error("malformed grid spec `{0}`: {1}")]
    GridSpec(String, String),

    /// Configuration file problems.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }
}
