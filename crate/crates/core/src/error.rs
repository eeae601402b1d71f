use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),

    #[error("matrix is singular to working precision: pivot {pivot} has magnitude {magnitude:e} (threshold {threshold:e})")]
    Singular {
        pivot: usize,
        magnitude: f64,
        threshold: f64,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("state became non-finite at t = {time}")]
    NonFinite { time: f64 },

    #[error(
        "step {step:e} too large: step × fastest rate ({rate:e}) must not exceed {bound}; use step ≤ {suggested:e}"
    )]
    StepTooLarge {
        step: f64,
        rate: f64,
        bound: f64,
        suggested: f64,
    },

    #[error("drift matrix is not stable: max Re(λ) = {max_real:e} (margin {margin:e})")]
    Unstable { max_real: f64, margin: f64 },

    #[error("Lyapunov solution failed its checks: {reason} (condition estimate {condition:e})")]
    Lyapunov { reason: String, condition: f64 },

    #[error("linewidth extraction failed: {0}")]
    Linewidth(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
