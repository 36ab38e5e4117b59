//! Property tests for the module invariants that hold on arbitrary inputs.

use proptest::prelude::*;

use rankcorr::bandwidth::BandwidthSpec;
use rankcorr::bandwidth::{heller_bandwidth, silverman_bandwidth, ScaleEstimator};
use rankcorr::estimators::{
    kendall, pearson, smoothed_score_correlation, spearman_dsq, spearman_moment,
};
use rankcorr::inference::wald_test;
use rankcorr::ranking::{ecdf, ordinary_ranks, smoothed_ecdf, SmoothKernel};
use rankcorr::PairedSample;

/// Bounded finite values; ties happen (a small value pool is mixed in).
fn data_vec(min_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop_oneof![
            (-1.0e6..1.0e6f64),
            (-8i32..8).prop_map(|k| k as f64), // tie fodder
        ],
        min_len..80,
    )
}

/// Strictly separated values (gap >= 0.5) in shuffled order.
fn separated_vec(min_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (
        prop::collection::vec(0.05..0.45f64, min_len..60),
        -100.0..100.0f64,
        any::<u64>(),
    )
        .prop_map(|(jitter, shift, seed)| {
            let mut vals: Vec<f64> = jitter
                .iter()
                .enumerate()
                .map(|(i, j)| shift + i as f64 + j)
                .collect();
            // deterministic shuffle driven by the seed
            let mut state = seed | 1;
            for i in (1..vals.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                let j = (state >> 33) as usize % (i + 1);
                vals.swap(i, j);
            }
            vals
        })
}

fn pearson_like_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (separated_vec(3), separated_vec(3)).prop_map(|(a, b)| {
        let n = a.len().min(b.len());
        (a[..n].to_vec(), b[..n].to_vec())
    })
}

proptest! {
    /// Average-method ranks always sum to n(n+1)/2, exactly.
    #[test]
    fn ranks_sum_identity(v in data_vec(1)) {
        let n = v.len() as f64;
        let r = ordinary_ranks(&v).unwrap();
        prop_assert_eq!(r.ranks.iter().sum::<f64>(), n * (n + 1.0) / 2.0);
        for rank in &r.ranks {
            prop_assert!(*rank >= 1.0 && *rank <= n);
        }
    }

    /// Ranks are invariant under strictly increasing maps of the data.
    #[test]
    fn ranks_monotone_invariant(v in separated_vec(2)) {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let span = v.len() as f64;
        let t: Vec<f64> = v.iter().map(|x| 2.0 * x + libm::exp((x - lo) / span)).collect();
        prop_assert_eq!(ordinary_ranks(&v).unwrap().ranks, ordinary_ranks(&t).unwrap().ranks);
    }

    /// The step ECDF and the smoothed ECDF stay inside [0, 1], and the
    /// smoothed one is bounded by monotonicity in t.
    #[test]
    fn ecdf_bounds(v in data_vec(1), t in -2.0e6..2.0e6f64, h in 0.001..100.0f64) {
        let f = ecdf(&v, t).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        for kernel in [SmoothKernel::NormalCdf, SmoothKernel::LogisticCdf] {
            let fs = smoothed_ecdf(&v, t, kernel, h).unwrap();
            prop_assert!((0.0..=1.0).contains(&fs));
            let fs2 = smoothed_ecdf(&v, t + 1.0, kernel, h).unwrap();
            prop_assert!(fs <= fs2);
        }
    }

    /// Both bandwidth rules are location-invariant and scale-equivariant.
    #[test]
    fn bandwidth_affine_equivariance(v in separated_vec(3), a in 0.05..20.0f64, b in -500.0..500.0f64) {
        let mapped: Vec<f64> = v.iter().map(|x| a * x + b).collect();
        let h = silverman_bandwidth(&v).unwrap();
        let hm = silverman_bandwidth(&mapped).unwrap();
        prop_assert!((hm - a * h).abs() <= 1e-12 * (1.0 + a * h));
        for scale in [ScaleEstimator::SdIqrMin, ScaleEstimator::Mad] {
            let h = heller_bandwidth(&v, scale).unwrap();
            let hm = heller_bandwidth(&mapped, scale).unwrap();
            prop_assert!((hm - a * h).abs() <= 1e-12 * (1.0 + a * h));
        }
    }

    /// Every estimator is symmetric in its two coordinates.
    #[test]
    fn estimator_symmetry((xs, ys) in pearson_like_pair()) {
        let s = PairedSample::from_slices(&xs, &ys).unwrap();
        let swapped = s.swapped();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        prop_assert!(close(pearson(&s).unwrap().estimate, pearson(&swapped).unwrap().estimate));
        prop_assert!(close(spearman_dsq(&s).unwrap().estimate, spearman_dsq(&swapped).unwrap().estimate));
        prop_assert!(close(kendall(&s).unwrap().estimate, kendall(&swapped).unwrap().estimate));
        for kernel in [SmoothKernel::NormalCdf, SmoothKernel::InterpolatedEcdf] {
            let r1 = smoothed_score_correlation(&s, kernel, &BandwidthSpec::default()).unwrap();
            let r2 = smoothed_score_correlation(&swapped, kernel, &BandwidthSpec::default()).unwrap();
            prop_assert!(close(r1.estimate, r2.estimate));
        }
    }

    /// Estimates stay inside [-1, 1] (up to roundoff).
    #[test]
    fn estimator_range((xs, ys) in pearson_like_pair()) {
        let s = PairedSample::from_slices(&xs, &ys).unwrap();
        let in_range = |r: f64| r.abs() <= 1.0 + 1e-9;
        prop_assert!(in_range(pearson(&s).unwrap().estimate));
        prop_assert!(in_range(spearman_moment(&s).unwrap().estimate));
        prop_assert!(in_range(spearman_dsq(&s).unwrap().estimate));
        prop_assert!(in_range(kendall(&s).unwrap().estimate));
        for kernel in [SmoothKernel::NormalCdf, SmoothKernel::InterpolatedEcdf] {
            let r = smoothed_score_correlation(&s, kernel, &BandwidthSpec::default()).unwrap();
            prop_assert!(in_range(r.estimate));
        }
    }

    /// p-values decrease as |estimate| grows, for fixed n.
    #[test]
    fn wald_p_monotone(e1 in 0.0..1.0f64, e2 in 0.0..1.0f64, n in 3usize..500) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let p_lo = wald_test(lo, n, 0.05).unwrap().p_value;
        let p_hi = wald_test(hi, n, 0.05).unwrap().p_value;
        prop_assert!(p_hi <= p_lo);
    }
}
