use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("duplicate edge label `{0}`")]
    DuplicateLabel(String),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("invalid rotation at vertex {vertex}: {message}")]
    InvalidRotation { vertex: usize, message: String },

    #[error("unknown edge label `{0}`")]
    UnknownLabel(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("vertex {vertex} has degree {degree}, more than the allowed {limit}")]
    DegreeExceeded { vertex: usize, degree: usize, limit: usize },

    #[error("graph has no rotation system")]
    MissingRotation,

    #[error("rotation system is not planar: {faces} faces, {vertices} vertices, {edges} edges")]
    NonPlanarEmbedding { faces: usize, vertices: usize, edges: usize },

    #[error("outer face hint does not match any face")]
    UnknownOuterFace,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coin block at vertex {vertex} is not unitary (defect {defect:e})")]
    NotUnitary { vertex: usize, defect: f64 },

    #[error("invalid local permutation at vertex {vertex}: {message}")]
    InvalidPermutation { vertex: usize, message: String },

    #[error("invalid percolation scheme: {0}")]
    InvalidScheme(String),

    #[error("scheme has {count} configurations, more than the cap of {cap}")]
    TooManyConfigurations { count: u128, cap: usize },

    #[error("scheme is not certified equivalent to full percolation")]
    NotEquivalent,

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("basis is not orthonormal (Gram residual {0:e})")]
    NotOrthonormal(f64),

    #[error("numerical instability: {0}")]
    Numerical(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors raised by a computation rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::NotOrthonormal(_))
    }
}
