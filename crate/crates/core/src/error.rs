use thiserror::Error;

/// Errors raised by the disk toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiskError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular evaluation: |z - w| = {separation:e} is below {threshold:e}")]
    Singularity { separation: f64, threshold: f64 },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("refinement levels disagree: fine = {fine:e}, coarse = {coarse:e}, allowed {allowed:e}")]
    Tolerance { fine: f64, coarse: f64, allowed: f64 },

    #[error("point with |w| = {modulus} exceeds the admissible radius {limit} for this resolution")]
    Margin { modulus: f64, limit: f64 },

    #[error("finite-difference step {step:e} too large (limit {limit:e})")]
    Step { step: f64, limit: f64 },

    #[error("integrability gate failed: estimated growth exponent {estimated:.4} >= {limit:.4}")]
    Integrability { estimated: f64, limit: f64 },

    #[error("envelope hypothesis refuted: estimated growth exponent {estimated:.4} > alpha = {alpha}")]
    Envelope { estimated: f64, alpha: f64 },

    #[error("degenerate pair at index {0}: points coincide")]
    DegeneratePair(usize),

    #[error("invalid boundary signal: {0}")]
    InvalidSignal(String),

    #[error("invalid disk field: {0}")]
    InvalidField(String),

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, DiskError>;
