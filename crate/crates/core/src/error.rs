use thiserror::Error;

/// Errors raised by the operator, measure and model routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("entry buffer has length {len}, expected {expected}")]
    InvalidLength { len: usize, expected: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("subsystem index {index} out of range for {factors} factors")]
    IndexOutOfRange { index: usize, factors: usize },

    #[error("tensor space dimensions must be non-empty and positive, got {dims:?}")]
    InvalidSpace { dims: Vec<usize> },

    #[error("operator trace {trace_abs:e} is below tolerance {tolerance:e}; the measure is undefined")]
    ZeroTrace { trace_abs: f64, tolerance: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("operation requires a bipartite space, got {factors} factors")]
    NotBipartite { factors: usize },

    #[error("interaction constant J is zero; the measure vanishes identically")]
    NoInteraction,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
