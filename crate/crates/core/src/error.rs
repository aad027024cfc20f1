use thiserror::Error;

/// Errors surfaced by the kernel. Predicates return `bool`; errors are for
/// malformed inputs and violated preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("degenerate bilinear form (rank {rank} < dim {dim})")]
    DegenerateForm { rank: usize, dim: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("non-nilpotent adjoint in exact mode (ad^{power} != 0)")]
    NonNilpotent { power: usize },

    #[error("jet has zero base part and cannot be inverted")]
    JetNotInvertible,

    #[error("not an element of the fat group: id + rho*f is singular")]
    NotInFatGroup,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("backward image is not a graph over the expected factor: {0}")]
    NotAGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
