use thiserror::Error;

/// Errors raised by the matrix, factorization and inversion routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeptaError {
    #[error("order too small: n = {n}, need n >= 8")]
    OrderTooSmall { n: usize },

    #[error("band wrap violation: {band}_{index} must be zero")]
    BandWrapViolation { band: &'static str, index: usize },

    #[error("band {band} has length {len}, expected {n}")]
    BandLength { band: &'static str, len: usize, n: usize },

    #[error("pattern violation at ({i},{j})")]
    PatternViolation { i: usize, j: usize },

    #[error("index ({i},{j}) out of range for order {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular matrix")]
    Singular,

    #[error("near-singular pivot at {index}, use exact backend")]
    NearSingularPivot { index: usize },

    /// A pivot reduced to exact zero while computing without the indeterminate.
    #[error("zero pivot at {index}")]
    ZeroPivot { index: usize },

    #[error("zero divisor C_{index} reached the column recurrence without substitution")]
    ZeroBandDivisor { index: usize },

    #[error("pole at t=0")]
    PoleAtZero,

    #[error("gcd undefined")]
    GcdUndefined,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("invalid scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: &'static str },

    #[error("invalid input: {0}")]
    Format(String),

    #[error("internal error: {0}")]
    Contract(String),
}

impl HeptaError {
    /// True for failures that indicate a broken internal contract rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            HeptaError::PoleAtZero
                | HeptaError::ZeroPivot { .. }
                | HeptaError::ZeroBandDivisor { .. }
                | HeptaError::DegreeCap { .. }
                | HeptaError::GcdUndefined
                | HeptaError::DivisionByZero
                | HeptaError::Contract(_)
        )
    }
}

pub type Result<T, E = HeptaError> = std::result::Result<T, E>;
