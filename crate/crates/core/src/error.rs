use thiserror::Error;

/// Errors raised by the library. Row and column indices carried in variants
/// are 0-based; the rendered messages use 1-based labels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("order {order} is too small (minimum {min})")]
    OrderTooSmall { order: usize, min: usize },

    #[error("order {order} is too large for this operation (maximum {max})")]
    OrderTooLarge { order: usize, max: usize },

    #[error("order {order} must be odd")]
    OrderNotOdd { order: usize },

    #[error("expected a matrix of order {expected}, got {got}")]
    WrongOrder { expected: usize, got: usize },

    #[error("entry ({}, {}) = {value} is not a positive finite number", .row + 1, .col + 1)]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error("diagonal entry ({0}, {0}) = {value} is not 1", .index + 1)]
    NonUnitDiagonal { index: usize, value: f64 },

    #[error(
        "reciprocity violated at ({}, {}): a_ij * a_ji = {product} (tolerance {tolerance})",
        .row + 1, .col + 1
    )]
    ReciprocityViolation { row: usize, col: usize, product: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("weight vector entry {} = {value} is not positive", .index + 1)]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("argument {0} must be positive")]
    NonPositiveArgument(f64),

    #[error("power iteration did not converge within {max_iter} iterations (residual {residual:e})")]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("matrix does not have constant row sums (relative spread {spread:e})")]
    NotConstantRowSums { spread: f64 },

    #[error("input matrix is consistent; the construction requires an inconsistent matrix")]
    ConsistentInput,

    #[error(
        "a consistent matrix of order {order} cannot be extended by one row and column to a \
         matrix with inefficient Perron vector; the Perron vector of every such extension is efficient"
    )]
    ConsistentInputAtFullOrder { order: usize },

    #[error("blocks have different orders ({left} and {right})")]
    ShapeMismatch { left: usize, right: usize },

    #[error("inefficiency criteria disagree: {0}")]
    InternalInconsistency(String),

    #[error("no index i with w(i) efficient for A(i)")]
    NotFound,

    #[error("unknown property {0:?}")]
    UnknownProperty(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "intermediate matrix does not contain the prescribed block: entry ({}, {}) differs",
        .row + 1, .col + 1
    )]
    IntermediateMismatch { row: usize, col: usize },

    #[error("could not grow an inconsistent intermediate matrix after {attempts} attempts")]
    GrowthFailed { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
