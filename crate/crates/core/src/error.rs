use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("filter order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("coefficient index {index} is out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("damping constant must lie in (0, 1], got {0}")]
    InvalidDamping(f64),

    #[error("{name} must be finite and positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("frequency must be finite and non-negative, got {0}")]
    NegativeFrequency(f64),

    #[error("denominator is degenerate at omega = {0}")]
    DegenerateDenominator(f64),

    #[error("time step {dt} is too large for stable integration (limit {limit})")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("response has not settled within the horizon (tail deviation {deviation:.3e})")]
    Unsettled { deviation: f64 },

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("cutoff {omega_n} rad/s is at or above the Nyquist limit for fs = {sample_rate} Hz")]
    AboveNyquist { omega_n: f64, sample_rate: f64 },

    #[error("invalid frequency range: {0}")]
    InvalidRange(String),

    #[error("invalid coefficient record: {0}")]
    InvalidRecord(String),

    #[error("{0}")]
    Usage(String),
}
