//! Error type shared across the crate.

use crate::types::EstimatorKind;

/// Everything that can go wrong while validating data, resolving a
/// bandwidth, estimating, testing, or running a campaign.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("LengthMismatch: input vectors differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("TooSmall: got n = {n}, need at least {min}")]
    TooSmall { n: usize, min: usize },

    #[error("NonFinite: non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("BadBandwidth: bandwidth must be finite and positive, got {value}")]
    BadBandwidth { value: f64 },

    #[error("UnsupportedKernel: the interpolated-ecdf kernel takes no bandwidth; it is only valid inside the smoothed-score estimator")]
    UnsupportedKernel,

    #[error("DegenerateScale: scale estimate is zero (sample has no spread)")]
    DegenerateScale,

    #[error("DuplicateValues: duplicate value at sorted position {position}; the interpolated ecdf requires strictly distinct inputs")]
    DuplicateValues { position: usize },

    #[error("ZeroVariance: a coordinate has zero variance")]
    ZeroVariance,

    #[error("TiesPresent: ties found in a coordinate ({groups} tied group(s)); this estimator requires tie-free data")]
    TiesPresent { groups: usize },

    #[error("BadAlpha: significance level must lie in (0, 1), got {alpha}")]
    BadAlpha { alpha: f64 },

    #[error("BadParameter: {name} = {value} is outside the admissible range")]
    BadParameter { name: &'static str, value: f64 },

    #[error("MissingCell: no simulated cell for estimator {estimator:?} at rho = {rho}")]
    MissingCell { estimator: EstimatorKind, rho: f64 },

    #[error("Campaign: replicate {replicate} at rho = {rho} failed: {source}")]
    Campaign {
        rho: f64,
        replicate: usize,
        source: Box<Error>,
    },

    #[error("Config: line {line}: {message}")]
    Config { line: usize, message: String },
}

impl Error {
    /// Short stable name of the variant, used by front ends in diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::TooSmall { .. } => "TooSmall",
            Error::NonFinite { .. } => "NonFinite",
            Error::BadBandwidth { .. } => "BadBandwidth",
            Error::UnsupportedKernel => "UnsupportedKernel",
            Error::DegenerateScale => "DegenerateScale",
            Error::DuplicateValues { .. } => "DuplicateValues",
            Error::ZeroVariance => "ZeroVariance",
            Error::TiesPresent { .. } => "TiesPresent",
            Error::BadAlpha { .. } => "BadAlpha",
            Error::BadParameter { .. } => "BadParameter",
            Error::MissingCell { .. } => "MissingCell",
            Error::Campaign { .. } => "Campaign",
            Error::Config { .. } => "Config",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(v: &[f64]) -> Result<()> {
    match v.iter().position(|x| !x.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}
