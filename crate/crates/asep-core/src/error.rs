use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// A constructor argument was outside its admissible range.
    #[error("invalid {field}: {message}")]
    Validation { field: &'static str, message: String },

    /// Two distributions were combined but live on different interval lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// An interval (a, b) did not satisfy 1 <= a <= b <= len.
    #[error("invalid interval ({a}, {b}) for length {len}")]
    InvalidInterval { a: usize, b: usize, len: usize },

    /// Normalization was requested for a weight vector without positive total
    /// mass, or with a genuinely negative entry.
    #[error("cannot normalize signed weights: total mass {total}, minimum entry {min_entry}")]
    SignedMass { total: f64, min_entry: f64 },

    /// A dense operation was asked to allocate beyond the supported size.
    #[error("capacity exceeded: {what} requires length <= {limit}, got {got}")]
    Capacity { what: &'static str, limit: usize, got: usize },

    /// A direct or iterative solve finished without reaching its accuracy
    /// target; `residual` reports how far off it stopped.
    #[error("numerical failure in {what}: residual {residual:e}")]
    Numerical { what: &'static str, residual: f64 },
}
