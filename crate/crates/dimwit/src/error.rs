use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes or Hilbert-space dimensions do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A value violates a documented invariant (norm, hermiticity, range, ...).
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    /// An unknown witness or experiment identifier.
    #[error("not found: {0}")]
    NotFound(String),

    /// A classical enumeration would exceed the guard limit.
    #[error("enumeration of {count} strategies exceeds the guard limit {limit}")]
    TooLarge { count: u128, limit: u128 },

    /// A count record required by an estimator is absent or empty.
    #[error("missing data: {0}")]
    MissingData(String),

    /// Two count records refer to the same setting.
    #[error("duplicate record for setting ({x},{y})")]
    DuplicateRecord { x: usize, y: usize },

    /// A file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A state cannot be produced by the wave-plate parametrization.
    #[error("not representable: {0}")]
    NotRepresentable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
