//! Ranks and empirical distribution functions.
//!
//! Provides ordinary (average-tie) ranks, the step ECDF, a kernel-smoothed
//! ECDF with its induced real-valued "smoothed ranks", and a bandwidth-free
//! piecewise-linear ECDF evaluated at the order statistics.
//!
//! Smoothing replaces the indicator inside the ECDF with a continuous CDF
//! `H((t - x_j) / h)`, so each smoothed rank is `n` times the smoothed ECDF
//! at the observation. For a symmetric `H` the smoothed ranks of a sample
//! always sum to `n^2 / 2`, and as `h -> 0` they converge to the ordinary
//! ranks minus 1/2 (the diagonal term contributes exactly `H(0) = 1/2`).

use crate::error::{check_finite, Error, Result};
use crate::inference::normal_cdf;

/// Rank vector together with tie metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector {
    /// Rank of each observation, in input order.
    pub ranks: Vec<f64>,
    /// True when produced by a smoothing kernel (real-valued ranks in (0, n)).
    pub smoothed: bool,
    /// Number of groups of exactly equal input values with multiplicity >= 2.
    pub tie_count: usize,
}

impl RankVector {
    pub fn n(&self) -> usize {
        self.ranks.len()
    }
}

/// Continuous CDF used as the smooth replacement for the ECDF indicator.
///
/// `NormalCdf` and `LogisticCdf` are symmetric bandwidth kernels.
/// `InterpolatedEcdf` is the piecewise-linear construction over midpoint
/// cells; it takes no bandwidth and is only usable through
/// [`crate::estimators::smoothed_score_correlation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothKernel {
    NormalCdf,
    LogisticCdf,
    InterpolatedEcdf,
}

impl SmoothKernel {
    pub const ALL: [SmoothKernel; 3] = [
        SmoothKernel::NormalCdf,
        SmoothKernel::LogisticCdf,
        SmoothKernel::InterpolatedEcdf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SmoothKernel::NormalCdf => "normal",
            SmoothKernel::LogisticCdf => "logistic",
            SmoothKernel::InterpolatedEcdf => "interpolated",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == s)
    }

    /// Whether the kernel is driven by a bandwidth.
    pub fn takes_bandwidth(self) -> bool {
        !matches!(self, SmoothKernel::InterpolatedEcdf)
    }

    fn cdf(self, u: f64) -> f64 {
        match self {
            SmoothKernel::NormalCdf => normal_cdf(u),
            // 1 / (1 + e^{-u}); evaluated through exp(-|u|) so both tails
            // underflow gracefully instead of overflowing.
            SmoothKernel::LogisticCdf => {
                if u >= 0.0 {
                    1.0 / (1.0 + libm::exp(-u))
                } else {
                    let e = libm::exp(u);
                    e / (1.0 + e)
                }
            }
            SmoothKernel::InterpolatedEcdf => unreachable!("checked by callers"),
        }
    }
}

fn check_bandwidth(h: f64) -> Result<()> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::BadBandwidth { value: h });
    }
    Ok(())
}

/// Indices that sort `v` ascending (stable).
fn sort_permutation(v: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).expect("finite values"));
    idx
}

/// Ordinary ranks with average-method tie resolution.
///
/// Each group of equal values receives the mean of the integer positions it
/// occupies, so the ranks always sum to exactly `n(n+1)/2`.
pub fn ordinary_ranks(v: &[f64]) -> Result<RankVector> {
    if v.is_empty() {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    check_finite(v)?;
    let n = v.len();
    let idx = sort_permutation(v);
    let mut ranks = vec![0.0; n];
    let mut tie_count = 0usize;
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && v[idx[end]] == v[idx[start]] {
            end += 1;
        }
        // positions start+1 ..= end (1-based); their mean is the shared rank
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = rank;
        }
        if end - start > 1 {
            tie_count += 1;
        }
        start = end;
    }
    Ok(RankVector {
        ranks,
        smoothed: false,
        tie_count,
    })
}

/// Step empirical CDF: fraction of entries `<= t`.
pub fn ecdf(v: &[f64], t: f64) -> Result<f64> {
    check_finite(v)?;
    if t.is_nan() {
        return Err(Error::NonFinite { index: 0 });
    }
    if v.is_empty() {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    let count = v.iter().filter(|&&x| x <= t).count();
    Ok(count as f64 / v.len() as f64)
}

/// Kernel-smoothed empirical CDF `(1/n) sum_j H((t - v_j)/h)`.
///
/// Nondecreasing in `t` and converging pointwise to the step ECDF at
/// continuity points as `h -> 0`. Requires a bandwidth kernel.
pub fn smoothed_ecdf(v: &[f64], t: f64, kernel: SmoothKernel, h: f64) -> Result<f64> {
    if !kernel.takes_bandwidth() {
        return Err(Error::UnsupportedKernel);
    }
    check_bandwidth(h)?;
    check_finite(v)?;
    if t.is_nan() {
        return Err(Error::NonFinite { index: 0 });
    }
    if v.is_empty() {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    let sum: f64 = v.iter().map(|&x| kernel.cdf((t - x) / h)).sum();
    Ok(sum / v.len() as f64)
}

/// Smoothed ranks: `n` times the smoothed ECDF at each sample point.
///
/// Direct O(n^2) summation; with a symmetric kernel the output sums to
/// `n^2 / 2` because `H(d) + H(-d) = 1` pairwise and `H(0) = 1/2` on the
/// diagonal.
pub fn smoothed_ranks(v: &[f64], kernel: SmoothKernel, h: f64) -> Result<RankVector> {
    if !kernel.takes_bandwidth() {
        return Err(Error::UnsupportedKernel);
    }
    check_bandwidth(h)?;
    check_finite(v)?;
    if v.is_empty() {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    let ranks: Vec<f64> = v
        .iter()
        .map(|&t| v.iter().map(|&x| kernel.cdf((t - x) / h)).sum())
        .collect();
    let tie_count = count_tied_groups(v);
    Ok(RankVector {
        ranks,
        smoothed: true,
        tie_count,
    })
}

fn count_tied_groups(v: &[f64]) -> usize {
    let idx = sort_permutation(v);
    let mut groups = 0;
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[idx[j]] == v[idx[i]] {
            j += 1;
        }
        if j - i > 1 {
            groups += 1;
        }
        i = j;
    }
    groups
}

/// Piecewise-linear ECDF through midpoint cells, evaluated at each input.
///
/// For the i-th order statistic the value is
/// `(i-1)/n + (x_(i) - V_i) / (n (V_{i+1} - V_i))` where `V_i` is the
/// midpoint of the (i-1)-th and i-th order statistics and the two end
/// cells mirror their inner neighbours. Values are returned in the input
/// order; re-sorted they are strictly increasing, with the i-th landing in
/// `((i-1)/n, i/n)`. Duplicate inputs collapse a cell to zero width and are
/// rejected.
pub fn interpolated_ecdf_at_order_stats(v: &[f64]) -> Result<Vec<f64>> {
    check_finite(v)?;
    let n = v.len();
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let idx = sort_permutation(v);
    for w in 1..n {
        if v[idx[w]] == v[idx[w - 1]] {
            return Err(Error::DuplicateValues { position: w });
        }
    }
    let sorted: Vec<f64> = idx.iter().map(|&i| v[i]).collect();

    // cells[i] holds the left edge of the cell of the (i+1)-th order stat
    let mut cells = vec![0.0; n + 1];
    for i in 1..n {
        cells[i] = 0.5 * (sorted[i - 1] + sorted[i]);
    }
    cells[0] = 2.0 * sorted[0] - cells[1];
    cells[n] = 2.0 * sorted[n - 1] - cells[n - 1];

    let nf = n as f64;
    let mut out = vec![0.0; n];
    for (order, &orig) in idx.iter().enumerate() {
        let width = cells[order + 1] - cells[order];
        out[orig] = order as f64 / nf + (sorted[order] - cells[order]) / (nf * width);
    }
    Ok(out)
}
