//! Seedable sampling from the two bivariate models the efficiency campaigns use.
//!
//! Streams come from a counter-based generator (ChaCha8) so a campaign can
//! hand each replicate its own substream of a single seed and stay
//! bit-reproducible no matter how replicates are scheduled. Transcendental
//! steps go through `libm`, keeping draws identical across platforms.

use crate::error::{Error, Result};
use crate::types::PairedSample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A bivariate model with an explicit dependence parameter `rho`.
///
/// `Normal` is the usual bivariate normal. `FgmExponential` couples two
/// exponential marginals (scales `theta1`, `theta2`) through the
/// Farlie-Gumbel-Morgenstern copula
/// `F(x,y) = F1(x) F2(y) [1 + rho (1 - F1(x)) (1 - F2(y))]`, a family whose
/// admissible dependence parameter spans [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BivariateModel {
    Normal {
        mu1: f64,
        mu2: f64,
        sigma1: f64,
        sigma2: f64,
        rho: f64,
    },
    FgmExponential {
        theta1: f64,
        theta2: f64,
        rho: f64,
    },
}

impl BivariateModel {
    pub fn rho(&self) -> f64 {
        match *self {
            BivariateModel::Normal { rho, .. } => rho,
            BivariateModel::FgmExponential { rho, .. } => rho,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(name: &'static str, value: f64) -> Result<()> {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::BadParameter { name, value });
            }
            Ok(())
        }
        fn in_unit(name: &'static str, value: f64) -> Result<()> {
            if !value.is_finite() || !(-1.0..=1.0).contains(&value) {
                return Err(Error::BadParameter { name, value });
            }
            Ok(())
        }
        match *self {
            BivariateModel::Normal {
                mu1,
                mu2,
                sigma1,
                sigma2,
                rho,
            } => {
                if !mu1.is_finite() {
                    return Err(Error::BadParameter {
                        name: "mu1",
                        value: mu1,
                    });
                }
                if !mu2.is_finite() {
                    return Err(Error::BadParameter {
                        name: "mu2",
                        value: mu2,
                    });
                }
                positive("sigma1", sigma1)?;
                positive("sigma2", sigma2)?;
                in_unit("rho", rho)
            }
            BivariateModel::FgmExponential {
                theta1,
                theta2,
                rho,
            } => {
                positive("theta1", theta1)?;
                positive("theta2", theta2)?;
                in_unit("rho", rho)
            }
        }
    }
}

/// Deterministic random stream: a seed plus a substream counter.
///
/// Equal `(seed, index)` pairs replay the identical stream, which is the
/// whole reproducibility contract of the simulation harness.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    /// Root stream of a seed (substream 0).
    pub fn from_seed(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    /// Substream `index` of `seed`; ChaCha streams are independent.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng }
    }

    /// Uniform draw on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Standard normal draw (Box-Muller over two uniforms; `libm`
    /// transcendentals keep the value platform-independent).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1], keeps the log finite
        let u2 = self.uniform();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * std::f64::consts::PI * u2)
    }
}

/// Draws `n` pairs from a bivariate normal via the Cholesky construction:
/// `X = mu1 + sigma1 Z1`, `Y = mu2 + sigma2 (rho Z1 + sqrt(1-rho^2) Z2)`.
pub fn sample_bivariate_normal(
    model: &BivariateModel,
    n: usize,
    rng: &mut RngStream,
) -> Result<PairedSample> {
    let BivariateModel::Normal {
        mu1,
        mu2,
        sigma1,
        sigma2,
        rho,
    } = *model
    else {
        return Err(Error::BadParameter {
            name: "model",
            value: f64::NAN,
        });
    };
    model.validate()?;
    let tail = (1.0 - rho * rho).max(0.0).sqrt();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let z1 = rng.standard_normal();
        let z2 = rng.standard_normal();
        xs.push(mu1 + sigma1 * z1);
        ys.push(mu2 + sigma2 * (rho * z1 + tail * z2));
    }
    PairedSample::new(xs, ys)
}

/// Draws `n` pairs from the FGM copula with exponential marginals by
/// conditional inversion.
///
/// With `u` uniform, the conditional copula CDF given `U = u` is
/// `C(v | u) = v [1 + A (1 - v)]` where `A = rho (1 - 2u)`; solving
/// `C(v | u) = w` for `v` and keeping the root inside [0, 1] gives
/// `v = 2w / (1 + A + sqrt((1+A)^2 - 4Aw))`, which is exact (no
/// rejection), continuous at `A = 0`, and free of cancellation. The
/// marginals are then inverted: `X = -theta1 ln(1-u)`, `Y = -theta2 ln(1-v)`.
pub fn sample_fgm_exponential(
    model: &BivariateModel,
    n: usize,
    rng: &mut RngStream,
) -> Result<PairedSample> {
    let BivariateModel::FgmExponential {
        theta1,
        theta2,
        rho,
    } = *model
    else {
        return Err(Error::BadParameter {
            name: "model",
            value: f64::NAN,
        });
    };
    model.validate()?;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let u = rng.uniform();
        let w = rng.uniform();
        let v = fgm_conditional_inverse(u, w, rho);
        xs.push(-theta1 * libm::log(1.0 - u));
        ys.push(-theta2 * libm::log(1.0 - v));
    }
    PairedSample::new(xs, ys)
}

/// Inverse of the FGM conditional copula CDF `v [1 + A(1-v)]` at `w`,
/// `A = rho (1 - 2u)`.
pub(crate) fn fgm_conditional_inverse(u: f64, w: f64, rho: f64) -> f64 {
    let a = rho * (1.0 - 2.0 * u);
    let disc = (1.0 + a) * (1.0 + a) - 4.0 * a * w;
    2.0 * w / (1.0 + a + libm::sqrt(disc.max(0.0)))
}

/// FGM joint CDF with exponential marginals, the distribution the sampler
/// above targets. Used by tests as the analytic reference.
pub fn fgm_exponential_cdf(theta1: f64, theta2: f64, rho: f64, x: f64, y: f64) -> f64 {
    if x < 0.0 || y < 0.0 {
        return 0.0;
    }
    let f1 = 1.0 - libm::exp(-x / theta1);
    let f2 = 1.0 - libm::exp(-y / theta2);
    f1 * f2 * (1.0 + rho * (1.0 - f1) * (1.0 - f2))
}

/// Draws from whichever model is given.
pub fn sample(model: &BivariateModel, n: usize, rng: &mut RngStream) -> Result<PairedSample> {
    match model {
        BivariateModel::Normal { .. } => sample_bivariate_normal(model, n, rng),
        BivariateModel::FgmExponential { .. } => sample_fgm_exponential(model, n, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators;

    fn normal(rho: f64) -> BivariateModel {
        BivariateModel::Normal {
            mu1: 2.0,
            mu2: 4.0,
            sigma1: 1.0,
            sigma2: 1.0,
            rho,
        }
    }

    #[test]
    fn identical_seed_identical_stream() {
        let s1 = sample(&normal(0.4), 200, &mut RngStream::substream(9, 3)).unwrap();
        let s2 = sample(&normal(0.4), 200, &mut RngStream::substream(9, 3)).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn substreams_differ() {
        let s1 = sample(&normal(0.4), 50, &mut RngStream::substream(9, 0)).unwrap();
        let s2 = sample(&normal(0.4), 50, &mut RngStream::substream(9, 1)).unwrap();
        assert_ne!(s1, s2);
    }

    #[test]
    fn independent_case_uncorrelated() {
        let s = sample(&normal(0.0), 10_000, &mut RngStream::from_seed(11)).unwrap();
        let r = estimators::pearson(&s).unwrap().estimate;
        assert!(r.abs() < 0.03, "r = {r}");
    }

    #[test]
    fn degenerate_line_at_rho_one() {
        let s = sample(&normal(1.0), 100, &mut RngStream::from_seed(5)).unwrap();
        let r = estimators::pearson(&s).unwrap().estimate;
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moderate_rho_recovered() {
        let s = sample(&normal(0.5), 20_000, &mut RngStream::from_seed(13)).unwrap();
        let r = estimators::pearson(&s).unwrap().estimate;
        assert!((r - 0.5).abs() < 0.02, "r = {r}");
    }

    #[test]
    fn fgm_independent_case() {
        let model = BivariateModel::FgmExponential {
            theta1: 1.0,
            theta2: 1.0,
            rho: 0.0,
        };
        let s = sample(&model, 10_000, &mut RngStream::from_seed(17)).unwrap();
        let r = estimators::kendall(&s).unwrap().estimate;
        assert!(r.abs() < 0.03, "tau = {r}");
    }

    #[test]
    fn fgm_marginals_exponential() {
        for rho in [-0.8, 0.0, 0.8] {
            let model = BivariateModel::FgmExponential {
                theta1: 2.0,
                theta2: 0.5,
                rho,
            };
            let n = 20_000;
            let s = sample(&model, n, &mut RngStream::from_seed(23)).unwrap();
            let mean_x = s.xs().iter().sum::<f64>() / n as f64;
            let mean_y = s.ys().iter().sum::<f64>() / n as f64;
            let band = 3.0 / (n as f64).sqrt();
            assert!(
                (mean_x - 2.0).abs() < 2.0 * band,
                "rho={rho} mean_x={mean_x}"
            );
            assert!(
                (mean_y - 0.5).abs() < 0.5 * band,
                "rho={rho} mean_y={mean_y}"
            );
        }
    }

    #[test]
    fn fgm_conditional_inverse_edges() {
        // w = 0 and w -> 1 pin the ends; A = 0 reduces to the identity
        assert_eq!(fgm_conditional_inverse(0.1, 0.0, 0.9), 0.0);
        assert!((fgm_conditional_inverse(0.1, 1.0, 0.9) - 1.0).abs() < 1e-12);
        assert_eq!(fgm_conditional_inverse(0.5, 0.37, 0.9), 0.37);
        assert_eq!(fgm_conditional_inverse(0.2, 0.37, 0.0), 0.37);
    }

    #[test]
    fn fgm_conditional_inverse_matches_cdf() {
        // empirical CDF of sampled v given fixed u vs the analytic
        // conditional; Kolmogorov-Smirnov distance stays small
        let mut rng = RngStream::from_seed(31);
        for (u, rho) in [(0.1, 0.9), (0.8, -0.7), (0.35, 0.5)] {
            let n = 10_000;
            let mut vs: Vec<f64> = (0..n)
                .map(|_| fgm_conditional_inverse(u, rng.uniform(), rho))
                .collect();
            vs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let a = rho * (1.0 - 2.0 * u);
            let mut ks = 0.0_f64;
            for (i, v) in vs.iter().enumerate() {
                let analytic = v * (1.0 + a * (1.0 - v));
                let lo = i as f64 / n as f64;
                let hi = (i + 1) as f64 / n as f64;
                ks = ks.max((analytic - lo).abs()).max((analytic - hi).abs());
            }
            assert!(ks < 0.02, "u={u} rho={rho} ks={ks}");
        }
    }

    #[test]
    fn model_validation() {
        assert!(normal(0.5).validate().is_ok());
        let bad = BivariateModel::Normal {
            mu1: 0.0,
            mu2: 0.0,
            sigma1: -1.0,
            sigma2: 1.0,
            rho: 0.0,
        };
        assert_eq!(bad.validate().unwrap_err().name(), "BadParameter");
        let bad = BivariateModel::FgmExponential {
            theta1: 1.0,
            theta2: 1.0,
            rho: 1.2,
        };
        assert_eq!(bad.validate().unwrap_err().name(), "BadParameter");
    }
}
