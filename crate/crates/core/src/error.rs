use thiserror::Error;

use crate::matrix::RatMatrix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a polytope space, but `{0}` is an l_p space")]
    NotPolytope(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("point set is not symmetric: {0}")]
    Asymmetric(String),

    #[error("vector is not on the unit sphere (norm {norm})")]
    NotOnSphere { norm: String },

    #[error("numerical radius is only a seminorm on this space")]
    DegenerateSeminorm { witness: RatMatrix },

    #[error("certification failed: {reason}")]
    CertificationFailure {
        reason: String,
        /// Offending elements, formatted for reporting.
        difference: Vec<String>,
    },

    #[error("operator has zero numerical radius")]
    ZeroRadius,

    #[error("empty operator family")]
    EmptyFamily,

    #[error("tensor functional is not an extreme point of the dual ball")]
    NotExtreme,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("matrix-space enumeration for dimension {dim} exceeds the cap of {cap}; lift it explicitly")]
    TooLarge { dim: usize, cap: usize },
}

impl Error {
    /// Certification failures are reported separately from ordinary precondition errors.
    pub fn is_certification_failure(&self) -> bool {
        matches!(self, Error::CertificationFailure { .. })
    }
}
