use thiserror::Error;

/// Errors raised by the samplers, solvers and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain the operation is defined on.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite matrix entry at {0}")]
    NonFinite(String),

    #[error("negative radicand {value} in subdiagonal entry {index}")]
    NegativeRadicand { index: usize, value: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    #[error("insufficient data: {usable} usable cells, need at least {required}")]
    InsufficientData { usable: usize, required: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}
