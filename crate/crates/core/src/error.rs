//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("block index out of range: {0}")]
    BlockIndexOutOfRange(String),

    #[error("parameter violation: {0}")]
    ParamViolation(String),

    /// The images of V fail `[images, [images, images]] = 0`, so they do not
    /// extend to the free 2-step nilpotent algebra. Carries a witness triple
    /// of V-basis indices.
    #[error("extension hypothesis violated at V-basis triple ({0}, {1}, {2})")]
    HypothesisViolated(usize, usize, usize),

    /// A constructed map failed the exhaustive bracket check. For legal
    /// parameters this indicates a bug, never expected input.
    #[error("representation check failed at basis pair ({left}, {right})")]
    RepresentationCheckFailed { left: String, right: String },

    /// Input data breaks a hypothesis a family construction relies on
    /// (for instance `p_j + q_j = 0` or a vanishing corner scalar).
    #[error("family hypothesis violated: {0}")]
    FamilyHypothesis(String),

    #[error("characteristic polynomial does not split over the rationals")]
    IrrationalSpectrum,

    #[error("representation is not standard: {0}")]
    NotStandard(String),

    #[error("representation cannot be normalized: {0}")]
    NotNormalizable(String),

    /// `beta = gamma` would put the whole wedge space in the kernel of the
    /// diagonal-action representation.
    #[error("degenerate parameters: beta = gamma")]
    ExtremeDegeneracy,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
