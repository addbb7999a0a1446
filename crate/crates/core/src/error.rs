use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("malformed network JSON: {0}")]
    MalformedJson(String),

    #[error("shape mismatch in layer {layer}, row {row}: expected {expected} entries, got {got}")]
    ShapeMismatch {
        layer: usize,
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("subcomplex is not full: simplex {0:?} has all vertices in the subcomplex but is missing from it")]
    NotFull(Vec<usize>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
