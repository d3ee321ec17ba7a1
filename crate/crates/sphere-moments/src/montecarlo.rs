//! Seeded Monte-Carlo estimators with standard errors.
//!
//! Every estimator here is deterministic: samples are partitioned across
//! ChaCha substreams `0..streams` of a common seed, each substream is
//! accumulated with a one-pass Welford scheme, and the per-stream results
//! are pooled in ascending stream id. Identical `(seed, streams, samples,
//! estimand)` therefore reproduce an identical [`MomentEstimate`] bit for
//! bit, while `streams` may still be evaluated in parallel (rayon).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::DirectionVector;
use crate::sampler::{dot, fill_sphere, q_norm, QExponent, SamplerState};

/// A Monte-Carlo mean with its standard error and seed provenance.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by √samples (binomial for tails).
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub streams: u64,
}

/// The statistic inside a tail indicator 1{statistic > threshold}.
#[derive(Debug, Clone, PartialEq)]
pub enum TailStatistic {
    /// ⟨s,e⟩²
    InnerProductSq { s: DirectionVector },
    /// ‖e‖_q (the norm itself, not its square)
    QNorm { q: QExponent },
}

/// A per-sample statistic whose expectation is being estimated.
#[derive(Debug, Clone, PartialEq)]
pub enum Estimand {
    /// ‖e‖_q²
    QNormSq { q: QExponent },
    /// ‖e‖_q⁴
    QNormFourth { q: QExponent },
    /// ⟨s,e⟩²
    InnerProductSq { s: DirectionVector },
    /// ⟨s,e⟩⁴
    InnerProductFourth { s: DirectionVector },
    /// ⟨s,e⟩²·‖e‖_q²
    InnerProductSqTimesQNormSq { q: QExponent, s: DirectionVector },
    /// 1{statistic > threshold}
    TailIndicator { statistic: TailStatistic, threshold: f64 },
}

impl Estimand {
    fn direction(&self) -> Option<&DirectionVector> {
        match self {
            Estimand::InnerProductSq { s }
            | Estimand::InnerProductFourth { s }
            | Estimand::InnerProductSqTimesQNormSq { s, .. }
            | Estimand::TailIndicator {
                statistic: TailStatistic::InnerProductSq { s },
                ..
            } => Some(s),
            _ => None,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if let Some(s) = self.direction() {
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: s.dim(),
                });
            }
        }
        if let Estimand::TailIndicator { threshold, .. } = self {
            if !threshold.is_finite() || *threshold < 0.0 {
                return Err(Error::domain(format!(
                    "tail threshold must be finite and ≥ 0, got {threshold}"
                )));
            }
        }
        Ok(())
    }

    /// The statistic for one unit-sphere sample `e`.
    fn eval(&self, e: &[f64]) -> f64 {
        match self {
            Estimand::QNormSq { q } => {
                let v = q_norm_unchecked(e, *q);
                v * v
            }
            Estimand::QNormFourth { q } => {
                let v = q_norm_unchecked(e, *q);
                (v * v) * (v * v)
            }
            Estimand::InnerProductSq { s } => {
                let ip = dot(s.as_slice(), e);
                ip * ip
            }
            Estimand::InnerProductFourth { s } => {
                let ip = dot(s.as_slice(), e);
                (ip * ip) * (ip * ip)
            }
            Estimand::InnerProductSqTimesQNormSq { q, s } => {
                let ip = dot(s.as_slice(), e);
                let v = q_norm_unchecked(e, *q);
                ip * ip * v * v
            }
            Estimand::TailIndicator { statistic, threshold } => {
                let stat = match statistic {
                    TailStatistic::InnerProductSq { s } => {
                        let ip = dot(s.as_slice(), e);
                        ip * ip
                    }
                    TailStatistic::QNorm { q } => q_norm_unchecked(e, *q),
                };
                f64::from(stat > *threshold)
            }
        }
    }
}

fn q_norm_unchecked(e: &[f64], q: QExponent) -> f64 {
    // `e` is a sphere sample, never empty.
    q_norm(e, q).expect("sphere samples are nonempty")
}

/// One-pass mean/variance accumulator (Welford), mergeable across streams.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    /// Chan et al. pooling; called in ascending stream order.
    fn merge(&mut self, other: &Welford) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    fn std_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

fn validate_run(n: usize, samples: u64, streams: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Dimension { min: 2, actual: n });
    }
    if samples < 2 {
        return Err(Error::domain(format!(
            "at least 2 samples are required, got {samples}"
        )));
    }
    if streams == 0 {
        return Err(Error::domain("stream count must be ≥ 1"));
    }
    Ok(())
}

/// Splits `samples` across `streams` (first `samples % streams` streams get
/// the extra sample) and folds each stream's per-sample statistics with
/// `fold`, returning per-stream results in ascending stream order.
fn run_streams<T, S, F>(n: usize, samples: u64, seed: u64, streams: u64, stat: S, fold: F) -> Vec<T>
where
    T: Send,
    S: Fn(&[f64]) -> f64 + Sync,
    F: Fn(u64, &mut dyn FnMut() -> f64) -> T + Sync,
{
    let base = samples / streams;
    let extra = samples % streams;
    (0..streams)
        .into_par_iter()
        .map(|stream_id| {
            let quota = base + u64::from(stream_id < extra);
            let mut state = SamplerState::new(seed, stream_id);
            let mut buf = vec![0.0; n];
            let mut next_stat = || {
                fill_sphere(&mut state, &mut buf);
                stat(&buf)
            };
            fold(quota, &mut next_stat)
        })
        .collect()
}

/// Monte-Carlo mean and standard error of `est` over `samples` sphere draws
/// in dimension `n`.
pub fn estimate(
    n: usize,
    est: &Estimand,
    samples: u64,
    seed: u64,
    streams: u64,
) -> Result<MomentEstimate> {
    validate_run(n, samples, streams)?;
    est.validate(n)?;
    let parts = run_streams(
        n,
        samples,
        seed,
        streams,
        |e| est.eval(e),
        |quota, next_stat| {
            let mut acc = Welford::default();
            for _ in 0..quota {
                acc.push(next_stat());
            }
            acc
        },
    );
    let mut pooled = Welford::default();
    for part in &parts {
        pooled.merge(part);
    }
    Ok(MomentEstimate {
        mean: pooled.mean,
        std_error: pooled.std_error(),
        samples,
        seed,
        streams,
    })
}

/// Which figure-style empirical constant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// C_p = n^{1−2/q}·Ê[‖e‖_q²], the empirical analogue of min{q−1, 16 ln n − 8}.
    Figure1,
    /// C_p = n^{2−2/q}·Ê[⟨s,e⟩²‖e‖_q²]/‖s‖₂², analogue of √3·min{2q−1, 32 ln n − 8}.
    Figure2,
}

/// Empirical constant C_p for one grid point; `s` is only consulted for
/// [`FigureKind::Figure2`]. The returned estimate carries C_p as `mean`
/// with the matching rescaled standard error.
pub fn empirical_constant(
    n: usize,
    q: QExponent,
    kind: FigureKind,
    s: &DirectionVector,
    samples: u64,
    seed: u64,
    streams: u64,
) -> Result<MomentEstimate> {
    let (est, scale) = match kind {
        FigureKind::Figure1 => (
            Estimand::QNormSq { q },
            (n as f64).powf(1.0 - q.two_over()),
        ),
        FigureKind::Figure2 => {
            if s.squared_norm() == 0.0 {
                return Err(Error::domain(
                    "figure-2 constant is undefined for a zero direction vector",
                ));
            }
            (
                Estimand::InnerProductSqTimesQNormSq { q, s: s.clone() },
                (n as f64).powf(2.0 - q.two_over()) / s.squared_norm(),
            )
        }
    };
    let raw = estimate(n, &est, samples, seed, streams)?;
    Ok(MomentEstimate {
        mean: scale * raw.mean,
        std_error: scale * raw.std_error,
        ..raw
    })
}

/// Empirical tail probability: the fraction of samples whose statistic
/// exceeds the estimand's threshold, with the exact binomial standard
/// error √(p̂(1−p̂)/N).
pub fn empirical_tail(
    n: usize,
    est: &Estimand,
    samples: u64,
    seed: u64,
    streams: u64,
) -> Result<MomentEstimate> {
    if !matches!(est, Estimand::TailIndicator { .. }) {
        return Err(Error::domain(
            "empirical_tail requires a tail-indicator estimand",
        ));
    }
    validate_run(n, samples, streams)?;
    est.validate(n)?;
    let counts = run_streams(
        n,
        samples,
        seed,
        streams,
        |e| est.eval(e),
        |quota, next_stat| {
            let mut exceedances = 0u64;
            for _ in 0..quota {
                if next_stat() > 0.5 {
                    exceedances += 1;
                }
            }
            exceedances
        },
    );
    let exceedances: u64 = counts.iter().sum();
    let p = exceedances as f64 / samples as f64;
    Ok(MomentEstimate {
        mean: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
        streams,
    })
}

/// One point of a median-deviation curve: the empirical exceedance
/// fraction of {|‖e‖_q − M̂| > t}.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MedianDeviationPoint {
    pub t: f64,
    pub exceedance: MomentEstimate,
}

/// Empirical median of ‖e‖_q together with deviation exceedances on a grid
/// of thresholds, for comparison against the median-concentration bound.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MedianDeviationCurve {
    pub median: f64,
    pub points: Vec<MedianDeviationPoint>,
}

/// Estimates the empirical median M̂ of ‖e‖_q (the middle order statistic
/// of the retained sample array), then for each t in `t_grid` the fraction
/// of samples with |‖e‖_q − M̂| > t.
pub fn empirical_median_deviation(
    n: usize,
    q: QExponent,
    samples: u64,
    seed: u64,
    streams: u64,
    t_grid: &[f64],
) -> Result<MedianDeviationCurve> {
    validate_run(n, samples, streams)?;
    if samples < 100 {
        return Err(Error::domain(format!(
            "median estimation requires at least 100 samples, got {samples}"
        )));
    }
    if t_grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::domain("median deviation thresholds must be finite and ≥ 0"));
    }
    let mut norms = Vec::with_capacity(samples as usize);
    let parts = run_streams(
        n,
        samples,
        seed,
        streams,
        |e| q_norm_unchecked(e, q),
        |quota, next_stat| {
            let mut vals = Vec::with_capacity(quota as usize);
            for _ in 0..quota {
                vals.push(next_stat());
            }
            vals
        },
    );
    for part in parts {
        norms.extend(part);
    }
    let mut sorted = norms.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("norms are finite"));
    let median = sorted[(sorted.len() - 1) / 2];

    let points = t_grid
        .iter()
        .map(|&t| {
            let exceedances = norms.iter().filter(|&&v| (v - median).abs() > t).count() as u64;
            let p = exceedances as f64 / samples as f64;
            MedianDeviationPoint {
                t,
                exceedance: MomentEstimate {
                    mean: p,
                    std_error: (p * (1.0 - p) / samples as f64).sqrt(),
                    samples,
                    seed,
                    streams,
                },
            }
        })
        .collect();
    Ok(MedianDeviationCurve { median, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;

    fn q(v: f64) -> QExponent {
        QExponent::new(v).unwrap()
    }

    fn unit_s(n: usize) -> DirectionVector {
        DirectionVector::first_basis(n).unwrap()
    }

    #[test]
    fn rejects_invalid_runs() {
        let est = Estimand::QNormSq { q: q(2.0) };
        assert!(estimate(1, &est, 100, 0, 1).is_err());
        assert!(estimate(10, &est, 1, 0, 1).is_err());
        assert!(estimate(10, &est, 100, 0, 0).is_err());
        let mismatched = Estimand::InnerProductSq { s: unit_s(5) };
        assert!(estimate(10, &mismatched, 100, 0, 1).is_err());
        let bad_tail = Estimand::TailIndicator {
            statistic: TailStatistic::QNorm { q: QExponent::INFINITY },
            threshold: -1.0,
        };
        assert!(estimate(10, &bad_tail, 100, 0, 1).is_err());
        assert!(empirical_tail(10, &Estimand::QNormSq { q: q(2.0) }, 100, 0, 1).is_err());
    }

    #[test]
    fn euclidean_norm_square_is_exactly_one() {
        let est = Estimand::QNormSq { q: q(2.0) };
        let r = estimate(64, &est, 5_000, 7, 4).unwrap();
        assert!((r.mean - 1.0).abs() <= 1e-12, "mean = {:.17}", r.mean);
        assert!(r.std_error <= 1e-12, "se = {:.3e}", r.std_error);
    }

    #[test]
    fn estimates_are_bit_reproducible() {
        let est = Estimand::InnerProductSqTimesQNormSq {
            q: QExponent::INFINITY,
            s: unit_s(32),
        };
        let a = estimate(32, &est, 40_000, 123, 8).unwrap();
        let b = estimate(32, &est, 40_000, 123, 8).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());

        // A different seed moves the estimate.
        let c = estimate(32, &est, 40_000, 124, 8).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }

    #[test]
    fn inner_product_square_matches_one_over_n() {
        let n = 50;
        let est = Estimand::InnerProductSq { s: unit_s(n) };
        let r = estimate(n, &est, 400_000, 5, 4).unwrap();
        assert!(
            (r.mean - 0.02).abs() <= 5.0 * r.std_error,
            "mean = {}, se = {}",
            r.mean,
            r.std_error
        );
    }

    #[test]
    fn inner_product_fourth_matches_closed_form() {
        let n = 10;
        let est = Estimand::InnerProductFourth { s: unit_s(n) };
        let r = estimate(n, &est, 400_000, 6, 4).unwrap();
        assert!(
            (r.mean - 0.025).abs() <= 5.0 * r.std_error,
            "mean = {}, se = {}",
            r.mean,
            r.std_error
        );
    }

    #[test]
    fn stream_partition_does_not_shift_the_distribution() {
        // Same work split 1 way and 8 ways: different sample sets, same
        // distribution, so means agree within combined noise.
        let est = Estimand::QNormSq { q: QExponent::INFINITY };
        let a = estimate(16, &est, 80_000, 9, 1).unwrap();
        let b = estimate(16, &est, 80_000, 9, 8).unwrap();
        let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!(
            (a.mean - b.mean).abs() <= 6.0 * combined,
            "1-stream {} vs 8-stream {} (combined se {})",
            a.mean,
            b.mean,
            combined
        );
    }

    #[test]
    fn doubling_samples_shrinks_standard_error() {
        let est = Estimand::QNormSq { q: QExponent::INFINITY };
        for seed in [1u64, 2, 3] {
            let small = estimate(8, &est, 40_000, seed, 4).unwrap();
            let large = estimate(8, &est, 80_000, seed, 4).unwrap();
            let ratio = large.std_error / small.std_error;
            let expect = std::f64::consts::FRAC_1_SQRT_2;
            assert!(
                (ratio / expect - 1.0).abs() <= 0.15,
                "seed {seed}: ratio {ratio} vs {expect}"
            );
        }
    }

    #[test]
    fn empirical_constant_figure1_at_q2_is_one() {
        let r = empirical_constant(100, q(2.0), FigureKind::Figure1, &unit_s(100), 1_000, 3, 2).unwrap();
        assert!((r.mean - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn empirical_constant_scales_raw_estimate() {
        let n = 100usize;
        let seed = 17;
        let raw = estimate(n, &Estimand::QNormSq { q: QExponent::INFINITY }, 20_000, seed, 4).unwrap();
        let c = empirical_constant(n, QExponent::INFINITY, FigureKind::Figure1, &unit_s(n), 20_000, seed, 4)
            .unwrap();
        assert!((c.mean - 100.0 * raw.mean).abs() <= 1e-12 * c.mean.abs());

        let raw2 = estimate(
            n,
            &Estimand::InnerProductSqTimesQNormSq {
                q: QExponent::INFINITY,
                s: unit_s(n),
            },
            20_000,
            seed,
            4,
        )
        .unwrap();
        let c2 = empirical_constant(n, QExponent::INFINITY, FigureKind::Figure2, &unit_s(n), 20_000, seed, 4)
            .unwrap();
        assert!((c2.mean - 1e4 * raw2.mean).abs() <= 1e-10 * c2.mean.abs());

        let zero = DirectionVector::new(vec![0.0; n]).unwrap();
        assert!(
            empirical_constant(n, QExponent::INFINITY, FigureKind::Figure2, &zero, 100, 0, 1).is_err()
        );
    }

    #[test]
    fn tail_fraction_at_zero_threshold_is_one() {
        let est = Estimand::TailIndicator {
            statistic: TailStatistic::InnerProductSq { s: unit_s(8) },
            threshold: 0.0,
        };
        let r = empirical_tail(8, &est, 10_000, 11, 4).unwrap();
        assert!(r.mean > 0.999, "fraction = {}", r.mean);
    }

    #[test]
    fn cap_event_never_fires_at_c_ten() {
        // ⟨s,e⟩² ≤ 1 for unit s, so the c = 10 threshold 100/n = 1 at n = 100
        // is unreachable; the empirical fraction must be exactly zero.
        let n = 100;
        let est = Estimand::TailIndicator {
            statistic: TailStatistic::InnerProductSq { s: unit_s(n) },
            threshold: 100.0 / n as f64,
        };
        let r = empirical_tail(n, &est, 100_000, 13, 4).unwrap();
        assert_eq!(r.mean, 0.0);
        assert_eq!(r.std_error, 0.0);
    }

    #[test]
    fn infinity_norm_tail_within_theoretical_bound() {
        let n = 100;
        let bound = bounds::infinity_norm_tail(n).unwrap();
        let est = Estimand::TailIndicator {
            statistic: TailStatistic::QNorm { q: QExponent::INFINITY },
            threshold: bound.threshold,
        };
        let r = empirical_tail(n, &est, 200_000, 29, 4).unwrap();
        assert!(
            r.mean <= bound.probability_bound + 5.0 * r.std_error,
            "fraction {} vs bound {}",
            r.mean,
            bound.probability_bound
        );
    }

    #[test]
    fn median_deviation_curve_shape() {
        let curve =
            empirical_median_deviation(1000, QExponent::INFINITY, 20_000, 19, 4, &[0.0, 0.05, 0.3, 1.0])
                .unwrap();
        assert!(curve.median > 0.0);
        // t = 0 captures everything except ties with the median itself.
        assert!(curve.points[0].exceedance.mean > 0.99);
        // Nested events: fractions are non-increasing in t.
        for w in curve.points.windows(2) {
            assert!(w[1].exceedance.mean <= w[0].exceedance.mean);
        }
        // Deviations beyond t = 1.0 cannot happen for n = 1000 (‖e‖_∞ ≈ 0.1),
        // and the theoretical bound clamps to 1, so both sides hold trivially.
        let last = &curve.points[3];
        assert_eq!(last.exceedance.mean, 0.0);
        assert!(last.exceedance.mean <= bounds::median_concentration_bound(1.0).unwrap());
    }

    #[test]
    fn median_deviation_rejects_small_runs() {
        assert!(empirical_median_deviation(10, q(2.0), 50, 0, 1, &[0.1]).is_err());
        assert!(empirical_median_deviation(10, q(2.0), 200, 0, 1, &[-0.1]).is_err());
    }

    #[test]
    fn cauchy_schwarz_coupling_holds_empirically() {
        // Ê[⟨s,e⟩²‖e‖_q²] ≤ √(Ê[⟨s,e⟩⁴]·Ê[‖e‖_q⁴]) within noise.
        for &(n, qv) in &[(8usize, 4.0), (100, f64::INFINITY)] {
            let qe = QExponent::new(qv).unwrap();
            let s = unit_s(n);
            let samples = 50_000;
            let lhs = estimate(
                n,
                &Estimand::InnerProductSqTimesQNormSq { q: qe, s: s.clone() },
                samples,
                31,
                4,
            )
            .unwrap();
            let ip4 = estimate(n, &Estimand::InnerProductFourth { s }, samples, 31, 4).unwrap();
            let q4 = estimate(n, &Estimand::QNormFourth { q: qe }, samples, 31, 4).unwrap();
            let rhs = (ip4.mean * q4.mean).sqrt();
            assert!(
                lhs.mean <= rhs + 5.0 * lhs.std_error,
                "n = {n}, q = {qv}: lhs {} vs rhs {}",
                lhs.mean,
                rhs
            );
        }
    }

    #[test]
    fn rotation_invariance_of_direction_statistics() {
        // Two different unit directions give statistically identical ⟨s,e⟩².
        let n = 12;
        let mut diag = vec![0.0; n];
        for slot in diag.iter_mut() {
            *slot = (1.0 / n as f64).sqrt();
        }
        let s1 = unit_s(n);
        let s2 = DirectionVector::new(diag).unwrap();
        let a = estimate(n, &Estimand::InnerProductSq { s: s1 }, 100_000, 37, 4).unwrap();
        let b = estimate(n, &Estimand::InnerProductSq { s: s2 }, 100_000, 38, 4).unwrap();
        let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!(
            (a.mean - b.mean).abs() <= 6.0 * combined,
            "{} vs {} (combined se {})",
            a.mean,
            b.mean,
            combined
        );
    }
}
