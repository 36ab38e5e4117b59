//! Rank score functions.
//!
//! The Wilcoxon linear score `phi(u) = sqrt(12) (u - 1/2)` maps a rank `r`
//! (ordinary or smoothed) to `sqrt(12) (r/(n+1) - 1/2)`. It is centered and
//! normalized (`int phi = 0`, `int phi^2 = 1`), and the generated scores
//! `a(i)` over the integer ranks satisfy `sum a(i) = 0` exactly and
//! `sum a(i)^2 = n(n-1)/(n+1)`.

/// sqrt(12), correctly rounded.
const SQRT_12: f64 = 3.464_101_615_137_754_4;

/// Available score functions. Only the Wilcoxon linear score is defined;
/// the enum leaves room for other standardized scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreFunction {
    Wilcoxon,
}

impl ScoreFunction {
    /// Score of a rank value for sample size `n`.
    ///
    /// The same formula serves integer ranks and real-valued smoothed
    /// ranks. Computed as `sqrt(12) * (2r - (n+1)) / (2(n+1))` so that
    /// integer ranks mirrored around the center produce exactly opposite
    /// scores.
    pub fn score(self, n: usize, rank_value: f64) -> f64 {
        match self {
            ScoreFunction::Wilcoxon => {
                let m = (n + 1) as f64;
                SQRT_12 * ((2.0 * rank_value - m) / (2.0 * m))
            }
        }
    }
}

/// Closed form of `sum_{i=1}^n a(i)^2` for the Wilcoxon score:
/// `n(n-1)/(n+1)`.
pub fn score_norm_sq(n: usize) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0) / (nf + 1.0)
}
