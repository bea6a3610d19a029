use thiserror::Error;

/// Errors shared by all computation modules.
#[derive(Debug, Error)]
pub enum Error {
    /// The sum of the distribution weights is too close to zero to divide by.
    /// This is the mechanism behind anomalous means: a near-vanishing
    /// denominator with a finite numerator.
    #[error("distribution normalization vanishes (|sum of weights| = {magnitude:.3e})")]
    ZeroNormalization { magnitude: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "path enumeration needs {paths} paths (d = {dimension}, N = {slices} slices); cap is {cap}"
    )]
    EnumerationCapExceeded {
        dimension: usize,
        slices: usize,
        paths: u128,
        cap: u64,
    },

    /// Post-selection succeeds with probability too small to condition on.
    #[error("post-selection probability {probability:.3e} is below threshold; readings undefined")]
    VanishingPostSelection { probability: f64 },

    /// The shape constant is unidentifiable because its denominator vanishes.
    #[error("shape constant unidentifiable: second weak moment equals the squared first")]
    DegenerateFit,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
