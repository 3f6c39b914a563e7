use thiserror::Error;

/// Errors from graph construction and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("{0} vertices exceeds the supported maximum")]
    TooManyVertices(usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Errors from the spectral and algebraic routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix of order {0} exceeds the exact characteristic polynomial cap")]
    TooLarge(usize),
    #[error("no real root in the requested interval")]
    NoRoot,
    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    MixedField(u64, u64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not equitable")]
    NotEquitable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
