//! Wald-type asymptotic test of independence.
//!
//! Score-based correlation estimates have mean 0 and variance `1/(n-1)`
//! under independence, so `z = r sqrt(n-1)` is asymptotically standard
//! normal and `|z| > z_{alpha/2}` rejects. The same machinery is applied
//! to the smoothed estimator; its null calibration is checked empirically
//! by the test suite rather than assumed. Ties make the variance result
//! (and hence the test) approximate.

use crate::error::{Error, Result};

/// Standard normal CDF through the complementary error function.
///
/// `Phi(x) = erfc(-x / sqrt(2)) / 2`; the erfc implementation is accurate
/// to well under 1e-12 absolute error over the whole range, so p-values
/// reproduce bit-for-bit across runs.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Outcome of the Wald test at level `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub z: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
}

/// Tests `H0: rho = 0` with `z = estimate * sqrt(n-1)`.
///
/// The two-sided p-value is `2 (1 - Phi(|z|))`, evaluated through the
/// lower tail for accuracy, and `reject` is `p < alpha` (equivalent to
/// `|z| > z_{alpha/2}` without an inverse CDF).
pub fn wald_test(estimate: f64, n: usize, alpha: f64) -> Result<TestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::BadAlpha { alpha });
    }
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    let z = estimate * ((n - 1) as f64).sqrt();
    let p_value = 2.0 * normal_cdf(-z.abs());
    Ok(TestResult {
        z,
        p_value,
        alpha,
        reject: p_value < alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_center() {
        let t = wald_test(0.0, 50, 0.05).unwrap();
        assert_eq!(t.z, 0.0);
        assert_eq!(t.p_value, 1.0);
        assert!(!t.reject);
    }

    #[test]
    fn z_two_rejects() {
        let t = wald_test(0.2, 101, 0.05).unwrap();
        assert_eq!(t.z, 2.0);
        // reference tail value: 2 (1 - Phi(2))
        assert!((t.p_value - 0.04550026389635842).abs() < 1e-12);
        assert!(t.reject);
    }

    #[test]
    fn z_one_accepts() {
        let t = wald_test(0.1, 101, 0.05).unwrap();
        assert_eq!(t.z, 1.0);
        assert!((t.p_value - 0.31731050786291415).abs() < 1e-12);
        assert!(!t.reject);
    }

    #[test]
    fn bad_alpha() {
        for alpha in [0.0, 1.0, 1.5, -0.1, f64::NAN] {
            assert_eq!(wald_test(0.2, 50, alpha).unwrap_err().name(), "BadAlpha");
        }
    }

    #[test]
    fn needs_three_points() {
        assert_eq!(
            wald_test(0.2, 2, 0.05).unwrap_err(),
            Error::TooSmall { n: 2, min: 3 }
        );
    }

    #[test]
    fn p_monotone_in_estimate() {
        let mut prev = f64::INFINITY;
        for k in 0..20 {
            let t = wald_test(0.05 * k as f64, 50, 0.05).unwrap();
            assert!(t.p_value <= prev);
            prev = t.p_value;
        }
    }

    #[test]
    fn normal_cdf_reference_points() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.959963984540054) - 0.975).abs() < 1e-12);
        assert!((normal_cdf(-1.959963984540054) - 0.025).abs() < 1e-12);
        assert!((normal_cdf(3.0) - 0.9986501019683699).abs() < 1e-13);
    }
}
