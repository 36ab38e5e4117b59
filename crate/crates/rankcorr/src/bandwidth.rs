//! Bandwidth rules for the smoothing kernel.
//!
//! Two closed-form rules are provided. Silverman's rule of thumb,
//! `h = 0.9 * min(s, IQR/1.349) * n^{-0.2}`, and Heller's faster-decaying
//! rule `h = sigma_hat * n^{-0.26}` (which satisfies `n h -> inf` and
//! `n h^4 -> 0`). Heller's scale estimate is selectable: the same
//! `min(s, IQR/1.349)` as Silverman, or the robust normalized MAD. Both
//! rules are location-invariant and scale-equivariant.

use crate::error::{check_finite, Error, Result};

/// Which rule produces the bandwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandwidthRule {
    Silverman,
    Heller,
    Fixed(f64),
}

/// Scale estimate used inside Heller's rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleEstimator {
    /// `min(sample standard deviation, IQR / 1.349)`.
    SdIqrMin,
    /// Normalized median absolute deviation, `1.4826 * MAD`.
    Mad,
}

impl ScaleEstimator {
    pub fn name(self) -> &'static str {
        match self {
            ScaleEstimator::SdIqrMin => "sd-iqr",
            ScaleEstimator::Mad => "mad",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sd-iqr" => Some(ScaleEstimator::SdIqrMin),
            "mad" => Some(ScaleEstimator::Mad),
            _ => None,
        }
    }
}

/// A bandwidth rule plus the scale estimator it may need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthSpec {
    pub rule: BandwidthRule,
    pub scale: ScaleEstimator,
}

impl Default for BandwidthSpec {
    /// Heller rate with the robust MAD scale.
    fn default() -> Self {
        Self {
            rule: BandwidthRule::Heller,
            scale: ScaleEstimator::Mad,
        }
    }
}

impl BandwidthSpec {
    pub fn silverman() -> Self {
        Self {
            rule: BandwidthRule::Silverman,
            scale: ScaleEstimator::SdIqrMin,
        }
    }

    pub fn fixed(h: f64) -> Self {
        Self {
            rule: BandwidthRule::Fixed(h),
            scale: ScaleEstimator::SdIqrMin,
        }
    }
}

/// Sample standard deviation (n-1 denominator).
fn sample_sd(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let ss: f64 = v.iter().map(|x| (x - mean) * (x - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Linear-interpolation quantile of already sorted data (R type 7):
/// position `(n-1) p`, interpolating between the bracketing order stats.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let pos = (n - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if lo + 1 >= n {
        sorted[n - 1]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

fn iqr(sorted: &[f64]) -> f64 {
    quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25)
}

fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn sorted_copy(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    s
}

/// `min(s, IQR/1.349)`, the scale inside Silverman's rule.
fn sd_iqr_min(v: &[f64]) -> f64 {
    let sorted = sorted_copy(v);
    sample_sd(v).min(iqr(&sorted) / 1.349)
}

/// Normalized MAD: `1.4826 * median |v_i - median(v)|`. The constant makes
/// the estimate consistent for sigma under normality.
fn normalized_mad(v: &[f64]) -> f64 {
    let sorted = sorted_copy(v);
    let med = median_sorted(&sorted);
    let devs = sorted_copy(&v.iter().map(|x| (x - med).abs()).collect::<Vec<_>>());
    1.4826 * median_sorted(&devs)
}

fn scale_estimate(v: &[f64], scale: ScaleEstimator) -> f64 {
    match scale {
        ScaleEstimator::SdIqrMin => sd_iqr_min(v),
        ScaleEstimator::Mad => normalized_mad(v),
    }
}

fn validate_input(v: &[f64]) -> Result<()> {
    if v.len() < 2 {
        return Err(Error::TooSmall { n: v.len(), min: 2 });
    }
    check_finite(v)
}

/// Silverman's rule of thumb: `0.9 * min(s, IQR/1.349) * n^{-0.2}`.
pub fn silverman_bandwidth(v: &[f64]) -> Result<f64> {
    validate_input(v)?;
    let sigma = sd_iqr_min(v);
    if sigma <= 0.0 {
        return Err(Error::DegenerateScale);
    }
    Ok(0.9 * sigma * libm::pow(v.len() as f64, -0.2))
}

/// Heller's rule: `sigma_hat * n^{-0.26}` with the chosen scale estimate.
pub fn heller_bandwidth(v: &[f64], scale: ScaleEstimator) -> Result<f64> {
    validate_input(v)?;
    let sigma = scale_estimate(v, scale);
    if sigma <= 0.0 {
        return Err(Error::DegenerateScale);
    }
    Ok(sigma * libm::pow(v.len() as f64, -0.26))
}

/// Resolves a bandwidth spec against a sample. `Fixed` passes through.
pub fn resolve(spec: &BandwidthSpec, v: &[f64]) -> Result<f64> {
    match spec.rule {
        BandwidthRule::Silverman => silverman_bandwidth(v),
        BandwidthRule::Heller => heller_bandwidth(v, spec.scale),
        BandwidthRule::Fixed(h) => {
            if !h.is_finite() || h <= 0.0 {
                Err(Error::BadBandwidth { value: h })
            } else {
                Ok(h)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silverman_halves_at_n_32() {
        // 32^{-0.2} = 1/2 exactly, so h = 0.45 * sigma_hat
        let v: Vec<f64> = (0..32).map(|i| (i % 2) as f64).collect();
        let s = (8.0_f64 / 31.0).sqrt(); // 32 deviations of 0.5, /31
                                         // IQR = 1, IQR/1.349 > s, so the min picks s
        let h = silverman_bandwidth(&v).unwrap();
        assert!((h - 0.45 * s).abs() < 1e-14);
    }

    #[test]
    fn silverman_degenerate_scale() {
        let v = [5.0; 6];
        assert_eq!(silverman_bandwidth(&v).unwrap_err(), Error::DegenerateScale);
    }

    #[test]
    fn silverman_hand_oracle() {
        // v = [1,2,3,4]: s = sqrt(5/3) ~ 1.291, IQR = 3.25 - 1.75 = 1.5,
        // IQR/1.349 ~ 1.112 wins the min
        let v = [1.0, 2.0, 3.0, 4.0];
        let want = 0.9 * (1.5 / 1.349) * libm::pow(4.0, -0.2);
        assert!((silverman_bandwidth(&v).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn heller_hand_oracles() {
        let v = [1.0, 2.0, 3.0, 4.0];
        let want_sd = (1.5 / 1.349) * libm::pow(4.0, -0.26);
        assert!((heller_bandwidth(&v, ScaleEstimator::SdIqrMin).unwrap() - want_sd).abs() < 1e-14);
        // median 2.5, |devs| = {1.5, 0.5, 0.5, 1.5}, MAD = 1
        let want_mad = 1.4826 * libm::pow(4.0, -0.26);
        assert!((heller_bandwidth(&v, ScaleEstimator::Mad).unwrap() - want_mad).abs() < 1e-14);
    }

    #[test]
    fn heller_rate_factor() {
        // 100^{-0.26} ~ 0.30200
        assert!((libm::pow(100.0, -0.26) - 0.30200).abs() < 5e-6);
    }

    #[test]
    fn heller_mad_collapse() {
        let v = [1.0, 1.0, 1.0, 9.0];
        assert_eq!(
            heller_bandwidth(&v, ScaleEstimator::Mad).unwrap_err(),
            Error::DegenerateScale
        );
    }

    #[test]
    fn scale_equivariance() {
        let v = [0.4, -1.2, 3.3, 2.2, 0.0, 5.9, -0.7];
        let scaled: Vec<f64> = v.iter().map(|x| 10.0 * x).collect();
        let h1 = silverman_bandwidth(&v).unwrap();
        assert!((silverman_bandwidth(&scaled).unwrap() - 10.0 * h1).abs() < 1e-12);
        for scale in [ScaleEstimator::SdIqrMin, ScaleEstimator::Mad] {
            let h = heller_bandwidth(&v, scale).unwrap();
            assert!((heller_bandwidth(&scaled, scale).unwrap() - 10.0 * h).abs() < 1e-12);
        }
    }

    #[test]
    fn decreasing_in_n() {
        // fixed sigma_hat: repeat a +-1 pattern so the scale stays put
        let mut prev = f64::INFINITY;
        for reps in [4usize, 16, 64, 256] {
            let v: Vec<f64> = (0..reps)
                .map(|i| if i % 2 == 0 { -1.0 } else { 1.0 })
                .collect();
            let h = heller_bandwidth(&v, ScaleEstimator::SdIqrMin).unwrap();
            assert!(h < prev);
            prev = h;
        }
    }

    #[test]
    fn resolve_dispatch() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(resolve(&BandwidthSpec::fixed(0.5), &v).unwrap(), 0.5);
        assert_eq!(
            resolve(&BandwidthSpec::silverman(), &v).unwrap(),
            silverman_bandwidth(&v).unwrap()
        );
        assert_eq!(
            resolve(&BandwidthSpec::default(), &v).unwrap(),
            heller_bandwidth(&v, ScaleEstimator::Mad).unwrap()
        );
        assert_eq!(
            resolve(&BandwidthSpec::fixed(-1.0), &v).unwrap_err().name(),
            "BadBandwidth"
        );
    }
}
