//! Structured domain errors.
//!
//! Every invariant violation is reported by name rather than surfacing as a
//! NaN somewhere downstream; the model silently leaves its own validity
//! region when `alpha / sigma` is large and negative, and the error messages
//! are the only way a caller can tell which constraint was broken.

use thiserror::Error;

/// Errors raised by parameter validation, pricing and the verification
/// oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A scalar input was NaN or infinite.
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// A scalar input that must be strictly positive was not.
    #[error("{name} must be positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },

    /// The shifted spot `S_t + (alpha/sigma) e^(r t)` (the numerator of the
    /// log ratio in d1) was not positive.
    #[error("shifted spot S_t + (alpha/sigma) e^(r t) must be positive, got {value}")]
    ShiftedSpot { value: f64 },

    /// The shifted strike `K + (alpha/sigma) e^(r T)` (the denominator of the
    /// log ratio in d1) was not positive.
    #[error("shifted strike K + (alpha/sigma) e^(r T) must be positive, got {value}")]
    ShiftedStrike { value: f64 },

    /// Time to maturity below the near-expiry guard; every formula divides by
    /// `sqrt(T - t)`.
    #[error("time to maturity must be at least 1e-12 years, got {tau}")]
    Maturity { tau: f64 },

    /// Evaluation time outside `[0, T)`.
    #[error("evaluation time must satisfy 0 <= t < maturity, got t = {t}")]
    TimeOutOfRange { t: f64 },

    /// The diffusion coefficient `sigma S_t + alpha e^(r t)` was not positive
    /// where gamma requires it.
    #[error("diffusion coefficient sigma S_t + alpha e^(r t) must be positive, got {value}")]
    DegenerateDiffusion { value: f64 },

    /// Monte Carlo configuration with no paths.
    #[error("Monte Carlo path count must be at least 1")]
    NoPaths,

    /// Antithetic pairing needs an even number of paths.
    #[error("antithetic sampling requires an even path count, got {paths}")]
    OddAntitheticPaths { paths: u64 },

    /// A time grid for path simulation was unusable.
    #[error("simulation times must be strictly increasing, nonnegative and at most the maturity")]
    BadTimeGrid,

    /// A surface axis specification was unusable.
    #[error("invalid grid axis: {reason}")]
    BadAxis { reason: String },

    /// A finite-difference bump moved the evaluation point outside the model
    /// domain; carries the offending coordinate and the underlying violation.
    #[error("finite-difference probe at {at} left the model domain: {source}")]
    FdProbe { at: f64, source: Box<Error> },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    ensure_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NotPositive { name, value })
    }
}
