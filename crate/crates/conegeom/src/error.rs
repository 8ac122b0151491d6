use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires a C2+ body; got a polytope")]
    UnsupportedSmoothness,

    #[error("polytope densities are classified, not evaluated pointwise")]
    PolytopeClassification,

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("degenerate surface body: {0}")]
    DegenerateBody(String),

    #[error("invalid boundary weight: {0}")]
    InvalidWeight(String),

    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),

    #[error("body descriptor error: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
