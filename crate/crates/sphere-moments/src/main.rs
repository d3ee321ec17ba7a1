//! Thin command-line front end over the library: figure sweeps plus direct
//! access to the exact-moment, bound, estimator, and sampler operations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sphere_moments::bounds::{self, TailBound, TailKind};
use sphere_moments::exact;
use sphere_moments::experiment::{
    csv_string, resolve_direction, run_figure1, run_figure2, DirectionSpec, ExperimentConfig,
};
use sphere_moments::montecarlo::{self, Estimand, TailStatistic};
use sphere_moments::sampler::{sample_sphere, QExponent, SamplerState};
use sphere_moments::{Error, Result};

#[derive(Parser)]
#[command(
    name = "sphere-moments",
    version,
    about = "Moments and concentration bounds of uniform unit-sphere vectors",
    after_help = "Worker threads for sweeps and estimates are controlled by the \
                  RAYON_NUM_THREADS environment variable (default: all logical CPUs)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the empirical/theoretical constant ratio for E[‖e‖_q²] over a dimension grid
    Figure1(SweepArgs),
    /// Sweep the empirical/theoretical constant ratio for E[⟨s,e⟩²‖e‖_q²] over a dimension grid
    Figure2(SweepArgs),
    /// Evaluate a closed-form moment
    Exact(ExactArgs),
    /// Evaluate a theoretical bound or tail inequality
    Bound(BoundArgs),
    /// Monte-Carlo estimate of a moment or tail probability
    Estimate(EstimateArgs),
    /// Draw uniformly distributed unit-sphere vectors
    Sample(SampleArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated, strictly increasing dimensions (default: 20 log-spaced points in [10, 1e5])
    #[arg(long, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    /// Hölder exponent, a real ≥ 2 or `inf`
    #[arg(long)]
    q: Option<QExponent>,
    /// Direction vector: `first-basis`, `random-unit`, or comma-separated components
    #[arg(long)]
    s: Option<DirectionSpec>,
    /// Monte-Carlo samples per grid point
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of reproducible sampling substreams
    #[arg(long)]
    streams: Option<u64>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the records as a JSON array to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// JSON config file; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SweepArgs {
    /// Flags override config-file fields, which override the defaults.
    fn resolve(self) -> Result<(ExperimentConfig, Option<PathBuf>)> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                serde_json::from_str::<ExperimentConfig>(&text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => ExperimentConfig::default(),
        };
        if let Some(grid) = self.n_grid {
            cfg.n_grid = grid;
        }
        if let Some(q) = self.q {
            cfg.q = q;
        }
        if let Some(s) = self.s {
            cfg.s_spec = s;
        }
        if let Some(samples) = self.samples {
            cfg.samples = samples;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(streams) = self.streams {
            cfg.streams = streams;
        }
        if self.out.is_some() {
            cfg.output_path = self.out;
        }
        Ok((cfg, self.json))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExactKind {
    /// E[|e₂|^q]
    ComponentAbsMoment,
    /// (n·E[|e₂|^q])^{2/q}
    JensenBound,
    /// E[⟨s,e⟩²]
    IpSq,
    /// E[⟨s,e⟩⁴]
    #[value(name = "ip-4th")]
    Ip4th,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    kind: ExactKind,
    /// Moment exponent (required for component-abs-moment and jensen-bound)
    #[arg(long)]
    q: Option<f64>,
    /// Direction vector (ip-sq / ip-4th), default `first-basis`
    #[arg(long, default_value = "first-basis")]
    s: DirectionSpec,
    /// Seed used only when `--s random-unit`
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    /// min{q−1, 16·ln n − 8}·n^{2/q−1} on E[‖e‖_q²]
    QNormSq,
    /// √3‖s‖₂²·min{2q−1, 32·ln n − 8}·n^{2/q−2} on E[⟨s,e⟩²‖e‖_q²]
    IpWeighted,
    /// min{2q−1, 32·ln n − 8}·n^{2/q−1} on √(E[‖e‖_q⁴])
    QNormFourthRoot,
    /// Minimizer q₀ of (q−1)·n^{2/q−1}
    OptimalQExpectation,
    /// Minimizer q₀ of (2q−1)·n^{2/q−1}
    OptimalQFourth,
    /// P{|⟨s,e⟩| > c/√(n−1)} ≤ (2/c)·e^{−c²/2}
    CapTail,
    /// P{‖e‖_∞ > 2√(ln n)/√(n−1)} ≤ n^{−3/2}
    InfinityNormTail,
    /// P{|f(e) − M_f| > t} ≤ 4·e^{−t²/4} for 1-Lipschitz f
    MedianConcentration,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_enum, default_value = "q-norm-sq")]
    kind: BoundKind,
    #[arg(long)]
    n: Option<usize>,
    /// Hölder exponent ≥ 2 or `inf`
    #[arg(long, default_value = "inf")]
    q: QExponent,
    #[arg(long, default_value = "first-basis")]
    s: DirectionSpec,
    /// Cap parameter c > 0 (cap-tail)
    #[arg(long)]
    c: Option<f64>,
    /// Deviation t > 0 (median-concentration)
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EstimateKind {
    /// ‖e‖_q²
    QNormSq,
    /// ‖e‖_q⁴
    #[value(name = "q-norm-4th")]
    QNorm4th,
    /// ⟨s,e⟩²
    IpSq,
    /// ⟨s,e⟩⁴
    #[value(name = "ip-4th")]
    Ip4th,
    /// ⟨s,e⟩²·‖e‖_q²
    IpSqQnormSq,
    /// 1{⟨s,e⟩² > threshold}
    TailIpSq,
    /// 1{‖e‖_q > threshold}
    TailQNorm,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    kind: EstimateKind,
    #[arg(long, default_value = "inf")]
    q: QExponent,
    #[arg(long, default_value = "first-basis")]
    s: DirectionSpec,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    streams: u64,
    /// Exceedance threshold (tail kinds only)
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Figure1(args) => run_sweep(args, run_figure1),
        Command::Figure2(args) => run_sweep(args, run_figure2),
        Command::Exact(args) => cmd_exact(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Sample(args) => cmd_sample(args),
    }
}

fn run_sweep(
    args: SweepArgs,
    runner: impl Fn(&ExperimentConfig) -> Result<Vec<sphere_moments::experiment::ExperimentRecord>>,
) -> Result<()> {
    let (cfg, json_path) = args.resolve()?;
    let records = runner(&cfg)?;
    if let Some(path) = &json_path {
        let text = serde_json::to_string_pretty(&records).expect("records serialize");
        std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
    }
    if cfg.output_path.is_none() {
        // The runner wrote nothing; emit the CSV on stdout.
        print!("{}", csv_string(&records));
    }
    Ok(())
}

fn require_n(n: Option<usize>, kind: &str) -> Result<usize> {
    n.ok_or_else(|| Error::Config(format!("--n is required for {kind}")))
}

fn cmd_exact(args: ExactArgs) -> Result<()> {
    let value = match args.kind {
        ExactKind::ComponentAbsMoment | ExactKind::JensenBound => {
            let q = args.q.ok_or_else(|| {
                Error::Config("--q is required for component-abs-moment and jensen-bound".into())
            })?;
            match args.kind {
                ExactKind::ComponentAbsMoment => {
                    let value = exact::component_abs_moment(args.n, q)?;
                    let ln_value = exact::component_abs_moment_ln(args.n, q)?;
                    println!(
                        "{}",
                        json!({
                            "kind": "component-abs-moment",
                            "n": args.n,
                            "q": q,
                            "value": value,
                            "ln_value": ln_value,
                        })
                    );
                    return Ok(());
                }
                _ => exact::jensen_q_norm_sq_bound(args.n, q)?,
            }
        }
        ExactKind::IpSq => {
            let s = resolve_direction(&args.s, args.n, args.seed)?;
            exact::inner_product_sq_moment(args.n, &s)?
        }
        ExactKind::Ip4th => {
            let s = resolve_direction(&args.s, args.n, args.seed)?;
            exact::inner_product_fourth_moment(args.n, &s)?
        }
    };
    let kind = match args.kind {
        ExactKind::ComponentAbsMoment => unreachable!("handled above"),
        ExactKind::JensenBound => "jensen-bound",
        ExactKind::IpSq => "ip-sq",
        ExactKind::Ip4th => "ip-4th",
    };
    let mut obj = json!({ "kind": kind, "n": args.n, "value": value });
    if let (ExactKind::JensenBound, Some(q)) = (args.kind, args.q) {
        obj["q"] = json!(q);
    }
    println!("{obj}");
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> Result<()> {
    let out = match args.kind {
        BoundKind::QNormSq => {
            let n = require_n(args.n, "q-norm-sq")?;
            let b = bounds::bound_q_norm_sq(n, args.q)?;
            with_context(json!(b), json!({"kind": "q-norm-sq", "n": n, "q": args.q}))
        }
        BoundKind::IpWeighted => {
            let n = require_n(args.n, "ip-weighted")?;
            let s = resolve_direction(&args.s, n, args.seed)?;
            let b = bounds::bound_inner_product_weighted(n, args.q, &s)?;
            with_context(json!(b), json!({"kind": "ip-weighted", "n": n, "q": args.q}))
        }
        BoundKind::QNormFourthRoot => {
            let n = require_n(args.n, "q-norm-fourth-root")?;
            let b = bounds::bound_q_norm_fourth_root(n, args.q)?;
            with_context(json!(b), json!({"kind": "q-norm-fourth-root", "n": n, "q": args.q}))
        }
        BoundKind::OptimalQExpectation => {
            let n = require_n(args.n, "optimal-q-expectation")?;
            json!({"kind": "optimal-q-expectation", "n": n, "value": bounds::optimal_q_expectation(n)?})
        }
        BoundKind::OptimalQFourth => {
            let n = require_n(args.n, "optimal-q-fourth")?;
            json!({"kind": "optimal-q-fourth", "n": n, "value": bounds::optimal_q_fourth(n)?})
        }
        BoundKind::CapTail => {
            let n = require_n(args.n, "cap-tail")?;
            let c = args
                .c
                .ok_or_else(|| Error::Config("--c is required for cap-tail".into()))?;
            let b = bounds::cap_tail_bound(n, c)?;
            with_context(json!(b), json!({"n": n, "c": c}))
        }
        BoundKind::InfinityNormTail => {
            let n = require_n(args.n, "infinity-norm-tail")?;
            let b = bounds::infinity_norm_tail(n)?;
            with_context(json!(b), json!({"n": n}))
        }
        BoundKind::MedianConcentration => {
            let t = args
                .t
                .ok_or_else(|| Error::Config("--t is required for median-concentration".into()))?;
            let b = TailBound {
                threshold: t,
                probability_bound: bounds::median_concentration_bound(t)?,
                kind: TailKind::Median,
            };
            json!(b)
        }
    };
    println!("{out}");
    Ok(())
}

fn with_context(mut body: serde_json::Value, context: serde_json::Value) -> serde_json::Value {
    let obj = body.as_object_mut().expect("bound serializes to an object");
    for (k, v) in context.as_object().expect("context is an object") {
        obj.insert(k.clone(), v.clone());
    }
    body
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let direction = |n| resolve_direction(&args.s, n, args.seed);
    let threshold = || {
        args.threshold
            .ok_or_else(|| Error::Config("--threshold is required for tail estimates".into()))
    };
    let (kind_name, est) = match args.kind {
        EstimateKind::QNormSq => ("q-norm-sq", Estimand::QNormSq { q: args.q }),
        EstimateKind::QNorm4th => ("q-norm-4th", Estimand::QNormFourth { q: args.q }),
        EstimateKind::IpSq => ("ip-sq", Estimand::InnerProductSq { s: direction(args.n)? }),
        EstimateKind::Ip4th => (
            "ip-4th",
            Estimand::InnerProductFourth { s: direction(args.n)? },
        ),
        EstimateKind::IpSqQnormSq => (
            "ip-sq-qnorm-sq",
            Estimand::InnerProductSqTimesQNormSq {
                q: args.q,
                s: direction(args.n)?,
            },
        ),
        EstimateKind::TailIpSq => (
            "tail-ip-sq",
            Estimand::TailIndicator {
                statistic: TailStatistic::InnerProductSq { s: direction(args.n)? },
                threshold: threshold()?,
            },
        ),
        EstimateKind::TailQNorm => (
            "tail-q-norm",
            Estimand::TailIndicator {
                statistic: TailStatistic::QNorm { q: args.q },
                threshold: threshold()?,
            },
        ),
    };
    let result = if matches!(est, Estimand::TailIndicator { .. }) {
        montecarlo::empirical_tail(args.n, &est, args.samples, args.seed, args.streams)?
    } else {
        montecarlo::estimate(args.n, &est, args.samples, args.seed, args.streams)?
    };
    let out = with_context(
        json!(result),
        json!({"kind": kind_name, "n": args.n, "q": args.q}),
    );
    println!("{out}");
    Ok(())
}

fn cmd_sample(args: SampleArgs) -> Result<()> {
    let mut state = SamplerState::new(args.seed, args.stream);
    let mut line = String::new();
    for _ in 0..args.count {
        let v = sample_sphere(args.n, &mut state)?;
        line.clear();
        for (i, x) in v.as_slice().iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            line.push_str(&x.to_string());
        }
        println!("{line}");
    }
    Ok(())
}
