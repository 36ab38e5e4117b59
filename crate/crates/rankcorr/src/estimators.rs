//! Point estimators of the correlation coefficient.
//!
//! Classical estimators (Pearson, three algebraically equivalent Spearman
//! forms, Kendall's tau-a) sit next to the score-based family: the general
//! score correlation over ordinary ranks, and the smoothed-score estimator
//! in which kernel-smoothed ranks (or the interpolated ECDF) replace the
//! ordinary ranks inside the Wilcoxon score.
//!
//! On tie-free data the three Spearman forms and the Wilcoxon score
//! correlation all agree. The smoothed estimator standardizes its scores
//! empirically - the linear score makes that the same thing as the Pearson
//! correlation of the two smoothed rank vectors - so the attenuation a
//! fixed `s_a^2` normalizer would introduce at working bandwidths cancels,
//! the estimate stays in [-1, 1], and as `h -> 0` the estimator reproduces
//! Spearman's value exactly.

use crate::bandwidth::{resolve, BandwidthSpec};
use crate::error::{Error, Result};
use crate::ranking::{
    interpolated_ecdf_at_order_stats, ordinary_ranks, smoothed_ranks, SmoothKernel,
};
use crate::scores::{score_norm_sq, ScoreFunction};
use crate::types::{BandwidthPair, EstimateResult, EstimatorKind, PairedSample};

/// Two-pass centered Pearson correlation over raw slices.
/// Returns `ZeroVariance` when either coordinate is constant.
fn pearson_slices(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Pearson's product-moment correlation (centered two-pass form; the
/// raw-moment rearrangement cancels catastrophically for large means).
pub fn pearson(s: &PairedSample) -> Result<EstimateResult> {
    let r = pearson_slices(s.xs(), s.ys())?;
    Ok(EstimateResult::point(EstimatorKind::Pearson, r, s.n()))
}

/// Spearman's correlation as Pearson applied to the average-method ranks.
pub fn spearman_moment(s: &PairedSample) -> Result<EstimateResult> {
    let rx = ordinary_ranks(s.xs())?;
    let ry = ordinary_ranks(s.ys())?;
    let r = pearson_slices(&rx.ranks, &ry.ranks)?;
    Ok(EstimateResult::point(
        EstimatorKind::SpearmanMoment,
        r,
        s.n(),
    ))
}

/// Spearman's correlation using the exact rank variance `n(n^2-1)/12`,
/// valid only for tie-free data.
pub fn spearman_simplified(s: &PairedSample) -> Result<EstimateResult> {
    let rx = ordinary_ranks(s.xs())?;
    let ry = ordinary_ranks(s.ys())?;
    if rx.tie_count > 0 || ry.tie_count > 0 {
        return Err(Error::TiesPresent {
            groups: rx.tie_count + ry.tie_count,
        });
    }
    let n = s.n() as f64;
    let center = (n + 1.0) / 2.0;
    let num: f64 = rx
        .ranks
        .iter()
        .zip(&ry.ranks)
        .map(|(a, b)| (a - center) * (b - center))
        .sum();
    let r = num / (n * (n * n - 1.0) / 12.0);
    Ok(EstimateResult::point(
        EstimatorKind::SpearmanSimplified,
        r,
        s.n(),
    ))
}

/// Spearman's correlation through the rank-difference identity
/// `1 - 6 sum D_i^2 / (n(n^2-1))`. Ties are tolerated with a small,
/// documented error. Computed as a single division so that negating one
/// coordinate of tie-free data flips the sign bit-exactly.
pub fn spearman_dsq(s: &PairedSample) -> Result<EstimateResult> {
    let rx = ordinary_ranks(s.xs())?;
    let ry = ordinary_ranks(s.ys())?;
    let n = s.n() as f64;
    let sum_dsq: f64 = rx
        .ranks
        .iter()
        .zip(&ry.ranks)
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum();
    let denom = n * (n * n - 1.0);
    let r = (denom - 6.0 * sum_dsq) / denom;
    Ok(EstimateResult::point(EstimatorKind::SpearmanDsq, r, s.n()))
}

/// Kendall's tau-a: concordant minus discordant pairs over `n(n-1)/2`.
/// Pairs tied in either coordinate count toward neither side while the
/// denominator stays at the full pair count.
pub fn kendall(s: &PairedSample) -> Result<EstimateResult> {
    let xs = s.xs();
    let ys = s.ys();
    let n = s.n();
    let mut concordant: i64 = 0;
    let mut discordant: i64 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let prod = (xs[i] - xs[j]) * (ys[i] - ys[j]);
            if prod > 0.0 {
                concordant += 1;
            } else if prod < 0.0 {
                discordant += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let r = (concordant - discordant) as f64 / pairs;
    Ok(EstimateResult::point(EstimatorKind::Kendall, r, n))
}

/// General score correlation `(1/s_a^2) sum a(R(x_i)) a(R(y_i))` over
/// ordinary ranks. With the Wilcoxon score this coincides with the
/// tie-free Spearman forms.
pub fn score_correlation(s: &PairedSample, score: ScoreFunction) -> Result<EstimateResult> {
    let rx = ordinary_ranks(s.xs())?;
    let ry = ordinary_ranks(s.ys())?;
    let n = s.n();
    let num: f64 = rx
        .ranks
        .iter()
        .zip(&ry.ranks)
        .map(|(&a, &b)| score.score(n, a) * score.score(n, b))
        .sum();
    let r = num / score_norm_sq(n);
    Ok(EstimateResult::point(EstimatorKind::ScoreBased, r, n))
}

/// Smoothed-score correlation.
///
/// With a bandwidth kernel, each coordinate is ranked through its own
/// kernel-smoothed ECDF (bandwidth resolved per coordinate from `bw`) and
/// the Wilcoxon scores of the smoothed ranks are correlated with empirical
/// standardization; both resolved bandwidths are recorded. With the
/// interpolated-ECDF kernel the scores come from `H_n` at the order
/// statistics instead and no bandwidth is involved.
///
/// The Wilcoxon score is affine in the rank, so the empirically
/// standardized score correlation is computed as the Pearson correlation
/// of the smoothed rank vectors. A theoretical `s_a^2` normalizer would
/// shrink the estimate toward zero at working bandwidths (smoothing
/// compresses the rank spread); self-normalization cancels that, keeps the
/// estimate in [-1, 1], and recovers Spearman's value exactly as `h -> 0`.
pub fn smoothed_score_correlation(
    s: &PairedSample,
    kernel: SmoothKernel,
    bw: &BandwidthSpec,
) -> Result<EstimateResult> {
    let n = s.n();
    match kernel {
        SmoothKernel::InterpolatedEcdf => {
            let hx = interpolated_ecdf_at_order_stats(s.xs())?;
            let hy = interpolated_ecdf_at_order_stats(s.ys())?;
            let r = pearson_slices(&hx, &hy)?;
            Ok(EstimateResult::point(EstimatorKind::SmoothedScore, r, n))
        }
        _ => {
            let hx = resolve(bw, s.xs())?;
            let hy = resolve(bw, s.ys())?;
            let rx = smoothed_ranks(s.xs(), kernel, hx)?;
            let ry = smoothed_ranks(s.ys(), kernel, hy)?;
            let r = pearson_slices(&rx.ranks, &ry.ranks)?;
            let mut out = EstimateResult::point(EstimatorKind::SmoothedScore, r, n);
            out.bandwidth = Some(BandwidthPair { x: hx, y: hy });
            Ok(out)
        }
    }
}

/// Dispatches an estimator kind. `kernel` and `bw` only matter for
/// `SmoothedScore`.
pub fn evaluate(
    kind: EstimatorKind,
    s: &PairedSample,
    kernel: SmoothKernel,
    bw: &BandwidthSpec,
) -> Result<EstimateResult> {
    match kind {
        EstimatorKind::Pearson => pearson(s),
        EstimatorKind::SpearmanMoment => spearman_moment(s),
        EstimatorKind::SpearmanSimplified => spearman_simplified(s),
        EstimatorKind::SpearmanDsq => spearman_dsq(s),
        EstimatorKind::Kendall => kendall(s),
        EstimatorKind::ScoreBased => score_correlation(s, ScoreFunction::Wilcoxon),
        EstimatorKind::SmoothedScore => smoothed_score_correlation(s, kernel, bw),
    }
}
