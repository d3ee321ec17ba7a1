//! Figure-style experiment sweeps: empirical vs theoretical constants.
//!
//! For each dimension `n` on a grid, a sweep estimates one moment by Monte
//! Carlo, rescales it into an empirical constant C_p comparable with the
//! constant C_t of the corresponding theoretical bound, and records the
//! ratio C_p/C_t. A bound that is tight up to a constant shows up as a
//! ratio that is ≤ 1 and flat across `n`.
//!
//! * Figure 1: E[‖e‖_q²]        → C_p = n^{1−2/q}·Ê,        C_t = min{q−1, 16·ln n − 8}
//! * Figure 2: E[⟨s,e⟩²‖e‖_q²] → C_p = n^{2−2/q}·Ê/‖s‖₂², C_t = √3·min{2q−1, 32·ln n − 8}
//!
//! Runs are deterministic for a fixed `(seed, streams)`: rerunning a sweep
//! reproduces the output CSV byte for byte.

use std::io::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::bounds::{norm_sq_min_constant, weighted_min_constant};
use crate::error::{Error, Result};
use crate::exact::DirectionVector;
use crate::montecarlo::{empirical_constant, FigureKind};
use crate::sampler::{sample_sphere, QExponent, SamplerState};

/// Stream id reserved for drawing random direction vectors, far away from
/// the estimator streams 0..streams.
const DIRECTION_STREAM: u64 = u64::MAX;

/// How the fixed direction vector s is chosen for weighted sweeps.
#[derive(Debug, Clone, PartialEq)]
pub enum DirectionSpec {
    /// The first standard basis vector (the default).
    FirstBasis,
    /// One uniformly random unit vector per grid point, drawn from a
    /// reserved substream of the experiment seed.
    RandomUnit,
    /// An explicit vector; its length must match every `n` in the grid.
    Explicit(Vec<f64>),
}

impl std::str::FromStr for DirectionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-basis" | "first_basis" => Ok(DirectionSpec::FirstBasis),
            "random-unit" | "random_unit" => Ok(DirectionSpec::RandomUnit),
            _ => {
                let components = s
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse::<f64>().map_err(|_| {
                            Error::Config(format!(
                                "direction must be `first-basis`, `random-unit`, or a comma-separated \
                                 list of reals; cannot parse {tok:?}"
                            ))
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                Ok(DirectionSpec::Explicit(components))
            }
        }
    }
}

impl<'de> serde::Deserialize<'de> for DirectionSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            List(Vec<f64>),
        }
        match Raw::deserialize(de)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::List(v) => Ok(DirectionSpec::Explicit(v)),
        }
    }
}

/// Configuration of one figure sweep.
#[derive(Debug, Clone, PartialEq, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Strictly increasing dimensions, each ≥ 2. Points below 8 are computed
    /// but flagged `valid = false` in the output.
    pub n_grid: Vec<usize>,
    pub q: QExponent,
    #[serde(rename = "s")]
    pub s_spec: DirectionSpec,
    pub samples: u64,
    pub seed: u64,
    pub streams: u64,
    #[serde(rename = "out")]
    pub output_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n_grid: default_n_grid(),
            q: QExponent::INFINITY,
            s_spec: DirectionSpec::FirstBasis,
            samples: 100_000,
            seed: 42,
            streams: 8,
            output_path: None,
        }
    }
}

/// 20 log-spaced dimensions over [10, 10⁵], deduplicated after rounding.
pub fn default_n_grid() -> Vec<usize> {
    log_spaced_grid(10, 100_000, 20)
}

/// `points` log-spaced integers over [lo, hi], strictly increasing.
pub fn log_spaced_grid(lo: usize, hi: usize, points: usize) -> Vec<usize> {
    assert!(lo >= 2 && hi > lo && points >= 2);
    let (ll, lh) = ((lo as f64).ln(), (hi as f64).ln());
    let mut grid: Vec<usize> = (0..points)
        .map(|i| {
            (ll + (lh - ll) * i as f64 / (points - 1) as f64)
                .exp()
                .round() as usize
        })
        .collect();
    grid.dedup();
    grid
}

impl ExperimentConfig {
    fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::Config("n_grid must not be empty".into()));
        }
        if self.n_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("n_grid must be strictly increasing".into()));
        }
        if self.n_grid[0] < 2 {
            return Err(Error::Config(format!(
                "dimensions must be ≥ 2, got {}",
                self.n_grid[0]
            )));
        }
        if !self.q.is_infinite() && self.q.get() < 2.0 {
            return Err(Error::Config(format!(
                "figure sweeps require q ≥ 2, got {}",
                self.q
            )));
        }
        if self.samples < 2 {
            return Err(Error::Config("samples must be ≥ 2".into()));
        }
        if self.streams == 0 {
            return Err(Error::Config("streams must be ≥ 1".into()));
        }
        if let DirectionSpec::Explicit(v) = &self.s_spec {
            if let Some(&n) = self.n_grid.iter().find(|&&n| n != v.len()) {
                return Err(Error::Config(format!(
                    "explicit direction has {} components but the grid contains n = {n}",
                    v.len()
                )));
            }
        }
        Ok(())
    }

    /// The direction vector used at grid point `n`.
    fn direction_for(&self, n: usize) -> Result<DirectionVector> {
        resolve_direction(&self.s_spec, n, self.seed)
    }
}

/// Materializes a [`DirectionSpec`] in dimension `n`. Random directions are
/// drawn from a substream of `seed` reserved away from estimator streams,
/// so the same seed yields the same direction.
pub fn resolve_direction(spec: &DirectionSpec, n: usize, seed: u64) -> Result<DirectionVector> {
    match spec {
        DirectionSpec::FirstBasis => DirectionVector::first_basis(n),
        DirectionSpec::RandomUnit => {
            let mut state = SamplerState::new(seed, DIRECTION_STREAM);
            Ok(sample_sphere(n, &mut state)?.into())
        }
        DirectionSpec::Explicit(v) => {
            let s = DirectionVector::new(v.clone())?;
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: s.dim(),
                });
            }
            Ok(s)
        }
    }
}

/// One row of a figure sweep.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub q: QExponent,
    pub c_p: f64,
    pub c_t: f64,
    /// c_p / c_t; at most ~1 when the theoretical constant is honest.
    pub ratio: f64,
    /// Standard error of c_p.
    pub std_error: f64,
    /// False when n is below the bound's validity threshold n ≥ 8.
    pub valid: bool,
}

fn run_figure(config: &ExperimentConfig, kind: FigureKind) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let records: Result<Vec<ExperimentRecord>> = config
        .n_grid
        .par_iter()
        .map(|&n| {
            let s = config.direction_for(n)?;
            let c_p = empirical_constant(
                n,
                config.q,
                kind,
                &s,
                config.samples,
                config.seed,
                config.streams,
            )?;
            let c_t = match kind {
                FigureKind::Figure1 => norm_sq_min_constant(n, config.q).0,
                // ‖s‖₂² is normalized out of both constants.
                FigureKind::Figure2 => 3f64.sqrt() * weighted_min_constant(n, config.q).0,
            };
            Ok(ExperimentRecord {
                n,
                q: config.q,
                c_p: c_p.mean,
                c_t,
                ratio: c_p.mean / c_t,
                std_error: c_p.std_error,
                valid: n >= 8,
            })
        })
        .collect();
    let records = records?;
    if let Some(path) = &config.output_path {
        write_csv_file(&records, path)?;
    }
    Ok(records)
}

/// Sweep of the squared-norm constant: Ê[‖e‖_q²] vs min{q−1, 16·ln n − 8}.
pub fn run_figure1(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    run_figure(config, FigureKind::Figure1)
}

/// Sweep of the weighted constant: Ê[⟨s,e⟩²‖e‖_q²] vs √3·min{2q−1, 32·ln n − 8}.
pub fn run_figure2(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    run_figure(config, FigureKind::Figure2)
}

/// CSV header shared by all sweep outputs.
pub const CSV_HEADER: &str = "n,q,C_p,C_t,ratio,std_error,valid";

/// Renders records as CSV: stable schema, `.` decimal points, `\n` endings.
pub fn csv_string(records: &[ExperimentRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n, r.q, r.c_p, r.c_t, r.ratio, r.std_error, r.valid
        ));
    }
    out
}

/// Writes the CSV rendering of `records` to `path`.
pub fn write_csv_file(records: &[ExperimentRecord], path: &std::path::Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(csv_string(records).as_bytes()).map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(n_grid: Vec<usize>, q: QExponent, samples: u64) -> ExperimentConfig {
        ExperimentConfig {
            n_grid,
            q,
            samples,
            seed: 7,
            streams: 4,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn default_grid_spans_the_requested_range() {
        let grid = default_n_grid();
        assert_eq!(grid.first(), Some(&10));
        assert_eq!(grid.last(), Some(&100_000));
        assert_eq!(grid.len(), 20);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn config_validation_catches_bad_grids() {
        let mut cfg = small_config(vec![], QExponent::INFINITY, 100);
        assert!(run_figure1(&cfg).is_err());
        cfg.n_grid = vec![10, 10];
        assert!(run_figure1(&cfg).is_err());
        cfg.n_grid = vec![1, 10];
        assert!(run_figure1(&cfg).is_err());
        cfg.n_grid = vec![10, 100];
        cfg.q = QExponent::new(1.5).unwrap();
        assert!(run_figure1(&cfg).is_err());
        cfg.q = QExponent::INFINITY;
        cfg.samples = 1;
        assert!(run_figure1(&cfg).is_err());
        cfg.samples = 100;
        cfg.streams = 0;
        assert!(run_figure1(&cfg).is_err());
        cfg.streams = 1;
        cfg.s_spec = DirectionSpec::Explicit(vec![1.0, 0.0]);
        assert!(run_figure2(&cfg).is_err()); // 2 components vs n ∈ {10, 100}
    }

    #[test]
    fn figure1_at_q_two_has_unit_ratios() {
        let cfg = small_config(vec![10, 31, 100], QExponent::new(2.0).unwrap(), 2_000);
        let records = run_figure1(&cfg).unwrap();
        for r in &records {
            assert!((r.c_p - 1.0).abs() <= 1e-12);
            assert!((r.c_t - 1.0).abs() <= 1e-14);
            assert!((r.ratio - 1.0).abs() <= 1e-12);
            assert!(r.valid);
        }
    }

    #[test]
    fn ratio_field_is_consistent() {
        let cfg = small_config(vec![16, 64], QExponent::INFINITY, 4_000);
        for r in run_figure1(&cfg).unwrap() {
            assert!((r.ratio - r.c_p / r.c_t).abs() <= 1e-12 * r.ratio.abs());
            assert!(r.c_t > 0.0);
        }
    }

    #[test]
    fn small_dimensions_are_flagged_not_rejected() {
        let cfg = small_config(vec![4, 8, 16], QExponent::INFINITY, 2_000);
        let records = run_figure1(&cfg).unwrap();
        assert_eq!(
            records.iter().map(|r| r.valid).collect::<Vec<_>>(),
            vec![false, true, true]
        );
    }

    #[test]
    fn csv_format_is_stable_and_deterministic() {
        let cfg = small_config(vec![10, 100], QExponent::INFINITY, 5_000);
        let a = csv_string(&run_figure1(&cfg).unwrap());
        let b = csv_string(&run_figure1(&cfg).unwrap());
        assert_eq!(a, b);
        let mut lines = a.lines();
        assert_eq!(lines.next(), Some("n,q,C_p,C_t,ratio,std_error,valid"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("10,inf,"));
        assert!(first.ends_with(",true"));
        assert_eq!(a.matches('\n').count(), 3);
    }

    #[test]
    fn figure2_ratios_are_bounded_on_a_small_grid() {
        let cfg = small_config(vec![10, 100], QExponent::INFINITY, 20_000);
        for r in run_figure2(&cfg).unwrap() {
            assert!(r.ratio > 0.0 && r.ratio <= 1.0, "ratio = {}", r.ratio);
        }
    }

    #[test]
    fn random_direction_is_seed_deterministic() {
        let mut cfg = small_config(vec![12], QExponent::INFINITY, 3_000);
        cfg.s_spec = DirectionSpec::RandomUnit;
        let a = run_figure2(&cfg).unwrap();
        let b = run_figure2(&cfg).unwrap();
        assert_eq!(a, b);
        cfg.seed = 8;
        let c = run_figure2(&cfg).unwrap();
        assert_ne!(a[0].c_p.to_bits(), c[0].c_p.to_bits());
    }

    #[test]
    fn stream_splitting_preserves_the_estimate_distribution() {
        let one = small_config(vec![32], QExponent::INFINITY, 40_000);
        let mut eight = one.clone();
        eight.streams = 8;
        let mut cfg1 = one;
        cfg1.streams = 1;
        let r1 = &run_figure1(&cfg1).unwrap()[0];
        let r8 = &run_figure1(&eight).unwrap()[0];
        let combined = (r1.std_error.powi(2) + r8.std_error.powi(2)).sqrt();
        assert!(
            (r1.c_p - r8.c_p).abs() <= 6.0 * combined,
            "{} vs {} (combined se {})",
            r1.c_p,
            r8.c_p,
            combined
        );
    }

    #[test]
    fn figure1_ratio_stable_across_decades() {
        // The empirical/theoretical ratio barely moves between n = 10² and
        // n = 10⁴ (the bound is tight up to a constant factor).
        let cfg = ExperimentConfig {
            n_grid: vec![100, 10_000],
            samples: 100_000,
            seed: 42,
            streams: 8,
            ..ExperimentConfig::default()
        };
        let records = run_figure1(&cfg).unwrap();
        let (a, b) = (records[0].ratio, records[1].ratio);
        assert!(a <= 1.0 && b <= 1.0);
        assert!(
            (a - b).abs() / b < 0.25,
            "ratios {a:.4} and {b:.4} differ by more than 25%"
        );
    }

    #[test]
    fn figure2_direction_choice_does_not_matter() {
        // Rotation invariance: a random unit direction and the first basis
        // vector give the same constant up to sampling noise.
        let basis = small_config(vec![32], QExponent::INFINITY, 40_000);
        let mut random = basis.clone();
        random.s_spec = DirectionSpec::RandomUnit;
        let rb = &run_figure2(&basis).unwrap()[0];
        let rr = &run_figure2(&random).unwrap()[0];
        let combined = (rb.std_error.powi(2) + rr.std_error.powi(2)).sqrt() / rb.c_t;
        assert!(
            (rb.ratio - rr.ratio).abs() <= 6.0 * combined,
            "first-basis {} vs random-unit {} (combined ratio se {})",
            rb.ratio,
            rr.ratio,
            combined
        );
    }

    #[test]
    fn config_json_round_trip() {
        let json = r#"{
            "n_grid": [10, 100, 1000],
            "q": "inf",
            "s": "random-unit",
            "samples": 5000,
            "seed": 9,
            "streams": 2
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.n_grid, vec![10, 100, 1000]);
        assert!(cfg.q.is_infinite());
        assert_eq!(cfg.s_spec, DirectionSpec::RandomUnit);
        assert_eq!(cfg.samples, 5000);
        assert_eq!(cfg.output_path, None);

        let json = r#"{"q": 4, "s": [1.0, 0.0, 0.0]}"#;
        let cfg: ExperimentConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.q.get(), 4.0);
        assert_eq!(cfg.s_spec, DirectionSpec::Explicit(vec![1.0, 0.0, 0.0]));
        assert_eq!(cfg.samples, 100_000);

        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn csv_file_writing_reports_the_path() {
        let records = run_figure1(&small_config(vec![10], QExponent::INFINITY, 200)).unwrap();
        let err = write_csv_file(&records, std::path::Path::new("/nonexistent-dir/x.csv"))
            .unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }
}
