use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SosError {
    #[error("elliptic nome out of range: p = {0} (need 0 < p < 1)")]
    NomeOutOfRange(f64),

    #[error("invalid evaluator setting: {0}")]
    InvalidSetting(String),

    #[error("theta series did not converge within {max_terms} terms at x = {x}")]
    NonConvergence { x: String, max_terms: usize },

    #[error("theta series term overflowed at x = {0}")]
    Overflow(String),

    #[error("|Re x| = {re} exceeds the representable range {limit} for this evaluator")]
    ArgumentOutOfRange { re: f64, limit: f64 },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("theta factor {factor} vanishes")]
    DivisionByZeroTheta { factor: String },

    #[error("enumeration limited to L <= {max}, got L = {l}")]
    EnumerationTooLarge { l: usize, max: usize },

    #[error("matrix is singular (pivot {pivot} at step {step})")]
    SingularMatrix { step: usize, pivot: f64 },

    #[error("degenerate auxiliary spectral point: {0}")]
    DegenerateSpectralPoint(String),
}

pub type Result<T, E = SosError> = std::result::Result<T, E>;
