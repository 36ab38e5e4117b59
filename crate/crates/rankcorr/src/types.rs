//! Core value types shared by every module.

use crate::error::{check_finite, Error, Result};

/// A validated bivariate sample: `n` paired observations `(x_i, y_i)`.
///
/// Both coordinates have the same length `n >= 2` and contain only finite
/// values. The fields are private so the invariant cannot be broken after
/// construction; the type is immutable and freely shareable.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PairedSample {
    /// Validates and wraps two coordinate vectors.
    ///
    /// Fails with `LengthMismatch`, `TooSmall` (n < 2) or `NonFinite`.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                left: xs.len(),
                right: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::TooSmall {
                n: xs.len(),
                min: 2,
            });
        }
        check_finite(&xs)?;
        check_finite(&ys)?;
        Ok(Self { xs, ys })
    }

    /// Convenience constructor from slices.
    pub fn from_slices(xs: &[f64], ys: &[f64]) -> Result<Self> {
        Self::new(xs.to_vec(), ys.to_vec())
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// The same sample with the coordinates exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }
}

/// Tags the estimator family an estimate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    Pearson,
    SpearmanMoment,
    SpearmanSimplified,
    SpearmanDsq,
    Kendall,
    ScoreBased,
    SmoothedScore,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 7] = [
        EstimatorKind::Pearson,
        EstimatorKind::SpearmanMoment,
        EstimatorKind::SpearmanSimplified,
        EstimatorKind::SpearmanDsq,
        EstimatorKind::Kendall,
        EstimatorKind::ScoreBased,
        EstimatorKind::SmoothedScore,
    ];

    /// Stable string form used by the CLI and in file output.
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Pearson => "pearson",
            EstimatorKind::SpearmanMoment => "spearman-moment",
            EstimatorKind::SpearmanSimplified => "spearman-simplified",
            EstimatorKind::SpearmanDsq => "spearman-dsq",
            EstimatorKind::Kendall => "kendall",
            EstimatorKind::ScoreBased => "score",
            EstimatorKind::SmoothedScore => "smoothed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Resolved per-coordinate smoothing bandwidths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthPair {
    pub x: f64,
    pub y: f64,
}

/// A point estimate of the correlation, optionally annotated with the
/// Wald test statistic.
///
/// `bandwidth` is populated by the smoothed-score estimator when a
/// bandwidth kernel was used (the interpolated-ecdf path has none).
/// `z` and `p_value` are present together or not at all.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateResult {
    pub kind: EstimatorKind,
    pub estimate: f64,
    pub n: usize,
    pub bandwidth: Option<BandwidthPair>,
    pub z: Option<f64>,
    pub p_value: Option<f64>,
}

impl EstimateResult {
    pub(crate) fn point(kind: EstimatorKind, estimate: f64, n: usize) -> Self {
        Self {
            kind,
            estimate,
            n,
            bandwidth: None,
            z: None,
            p_value: None,
        }
    }

    /// Attaches a Wald test outcome to the estimate.
    pub fn with_test(mut self, test: &crate::inference::TestResult) -> Self {
        self.z = Some(test.z);
        self.p_value = Some(test.p_value);
        self
    }
}
