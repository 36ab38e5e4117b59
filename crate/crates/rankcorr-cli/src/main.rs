//! `rankcorr` command line: estimate correlations from CSV data, run the
//! Wald independence test, execute simulation campaigns, and print
//! relative-efficiency tables.
//!
//! Exit codes: 2 malformed input (CSV/config/usage), 3 estimator error,
//! 4 bad significance level, 5 campaign error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use rankcorr::bandwidth::{BandwidthRule, BandwidthSpec, ScaleEstimator};
use rankcorr::inference::wald_test;
use rankcorr::ranking::SmoothKernel;
use rankcorr::simulation::{fmt_f64, run_campaign, CampaignConfig, ModelFamily};
use rankcorr::{estimators, Error, EstimatorKind, PairedSample};

mod csvio;

const PRESET_NORMAL: &str = include_str!("../presets/paper-normal.conf");
const PRESET_FGM: &str = include_str!("../presets/paper-fgm.conf");
const DEFAULT_SEED: u64 = 42;
const SEED_ENV: &str = "RANKCORR_SEED";

/// Highest dependence parameter kept in FGM campaign grids; the
/// efficiency tables stop at 0.95 and points beyond it are dropped.
const FGM_GRID_CAP: f64 = 0.95;

#[derive(Parser)]
#[command(
    name = "rankcorr",
    about = "Rank-based correlation estimation, testing, and Monte Carlo efficiency studies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate a correlation coefficient from a CSV file
    Estimate {
        /// Input CSV (optional header row is auto-detected)
        #[arg(long)]
        input: PathBuf,
        /// pearson | spearman-moment | spearman-simplified | spearman-dsq |
        /// kendall | score | smoothed
        #[arg(long)]
        method: String,
        /// 1-based column pair, e.g. 1,2
        #[arg(long, default_value = "1,2")]
        columns: String,
        /// Smoothing kernel for --method smoothed: normal | logistic | interpolated
        #[arg(long, default_value = "normal")]
        kernel: String,
        /// silverman | heller | fixed:V
        #[arg(long, default_value = "heller")]
        bandwidth: String,
        /// Scale inside Heller's rule: mad | sd-iqr
        #[arg(long, default_value = "mad")]
        scale: String,
    },
    /// Wald test of independence (H0: rho = 0) on CSV data
    Test {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        method: String,
        /// Significance level in (0, 1)
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value = "1,2")]
        columns: String,
        #[arg(long, default_value = "normal")]
        kernel: String,
        #[arg(long, default_value = "heller")]
        bandwidth: String,
        #[arg(long, default_value = "mad")]
        scale: String,
    },
    /// Run a Monte Carlo campaign from a config file (or preset name)
    Simulate {
        /// Path to a key = value config, or a preset: paper-normal | paper-fgm
        #[arg(long)]
        config: String,
        /// Overrides the config seed (flag wins over RANKCORR_SEED)
        #[arg(long)]
        seed: Option<u64>,
        /// Output prefix for <prefix>_curves.csv and <prefix>_report.json
        #[arg(long, default_value = "simulation")]
        out: String,
    },
    /// Print the five-row relative-efficiency table for a model
    Tables {
        /// normal | fgm
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 2000)]
        replicates: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Emit machine-readable CSV instead of the aligned table
        #[arg(long)]
        csv: bool,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Estimate {
            input,
            method,
            columns,
            kernel,
            bandwidth,
            scale,
        } => {
            let (result, _) =
                estimate_from_csv(&input, &method, &columns, &kernel, &bandwidth, &scale)?;
            println!("{}", estimate_json(&result));
            Ok(())
        }
        Command::Test {
            input,
            method,
            alpha,
            columns,
            kernel,
            bandwidth,
            scale,
        } => {
            let (result, _) =
                estimate_from_csv(&input, &method, &columns, &kernel, &bandwidth, &scale)?;
            let test = wald_test(result.estimate, result.n, alpha).map_err(|e| match e {
                Error::BadAlpha { .. } => CliError::new(4, e.to_string()),
                other => CliError::new(3, other.to_string()),
            })?;
            let result = result.with_test(&test);
            println!("{}", test_json(&result, &test));
            Ok(())
        }
        Command::Simulate { config, seed, out } => cmd_simulate(&config, seed, &out),
        Command::Tables {
            model,
            replicates,
            seed,
            csv,
        } => cmd_tables(&model, replicates, seed, csv),
    }
}

fn parse_method(method: &str) -> Result<EstimatorKind, CliError> {
    EstimatorKind::parse(method)
        .ok_or_else(|| CliError::new(2, format!("unknown method `{method}`")))
}

fn parse_smoothing(
    kernel: &str,
    bandwidth: &str,
    scale: &str,
) -> Result<(SmoothKernel, BandwidthSpec), CliError> {
    let kernel = SmoothKernel::parse(kernel)
        .ok_or_else(|| CliError::new(2, format!("unknown kernel `{kernel}`")))?;
    let rule = match bandwidth {
        "silverman" => BandwidthRule::Silverman,
        "heller" => BandwidthRule::Heller,
        other => {
            let v = other
                .strip_prefix("fixed:")
                .and_then(|v| v.parse::<f64>().ok())
                .ok_or_else(|| {
                    CliError::new(
                        2,
                        format!("bad bandwidth `{other}` (silverman | heller | fixed:V)"),
                    )
                })?;
            BandwidthRule::Fixed(v)
        }
    };
    let scale = ScaleEstimator::parse(scale)
        .ok_or_else(|| CliError::new(2, format!("unknown scale `{scale}`")))?;
    Ok((kernel, BandwidthSpec { rule, scale }))
}

fn estimate_from_csv(
    input: &std::path::Path,
    method: &str,
    columns: &str,
    kernel: &str,
    bandwidth: &str,
    scale: &str,
) -> Result<(rankcorr::EstimateResult, PairedSample), CliError> {
    let kind = parse_method(method)?;
    let (kernel, bw) = parse_smoothing(kernel, bandwidth, scale)?;
    let (xs, ys) = csvio::read_pair_columns(input, columns).map_err(|m| CliError::new(2, m))?;
    let sample = PairedSample::new(xs, ys).map_err(|e| CliError::new(3, e.to_string()))?;
    let result = estimators::evaluate(kind, &sample, kernel, &bw)
        .map_err(|e| CliError::new(3, e.to_string()))?;
    Ok((result, sample))
}

fn json_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_f64(v),
        None => "null".to_string(),
    }
}

fn bandwidth_json(r: &rankcorr::EstimateResult) -> String {
    match r.bandwidth {
        Some(bw) => format!("{{\"x\": {}, \"y\": {}}}", fmt_f64(bw.x), fmt_f64(bw.y)),
        None => "null".to_string(),
    }
}

fn estimate_json(r: &rankcorr::EstimateResult) -> String {
    format!(
        "{{\"method\": \"{}\", \"n\": {}, \"estimate\": {}, \"bandwidth\": {}}}",
        r.kind.name(),
        r.n,
        fmt_f64(r.estimate),
        bandwidth_json(r),
    )
}

fn test_json(r: &rankcorr::EstimateResult, t: &rankcorr::inference::TestResult) -> String {
    format!(
        "{{\"method\": \"{}\", \"n\": {}, \"estimate\": {}, \"bandwidth\": {}, \"z\": {}, \"p_value\": {}, \"alpha\": {}, \"reject\": {}}}",
        r.kind.name(),
        r.n,
        fmt_f64(r.estimate),
        bandwidth_json(r),
        json_opt(r.z),
        json_opt(r.p_value),
        fmt_f64(t.alpha),
        t.reject,
    )
}

/// flag > RANKCORR_SEED env > fallback (config seed or built-in default)
fn resolve_seed(flag: Option<u64>, fallback: u64) -> u64 {
    if let Some(s) = flag {
        return s;
    }
    if let Ok(v) = std::env::var(SEED_ENV) {
        if let Ok(s) = v.parse::<u64>() {
            return s;
        }
    }
    fallback
}

fn load_config(source: &str) -> Result<CampaignConfig, CliError> {
    let text = match source {
        "paper-normal" => PRESET_NORMAL.to_string(),
        "paper-fgm" => PRESET_FGM.to_string(),
        path => std::fs::read_to_string(path)
            .map_err(|e| CliError::new(2, format!("cannot read config `{path}`: {e}")))?,
    };
    CampaignConfig::parse_key_value(&text).map_err(|e| CliError::new(2, e.to_string()))
}

fn cmd_simulate(config: &str, seed: Option<u64>, out: &str) -> Result<(), CliError> {
    let mut cfg = load_config(config)?;
    cfg.seed = resolve_seed(seed, cfg.seed);

    if matches!(cfg.model, ModelFamily::FgmExponential { .. }) {
        let before = cfg.rho_grid.len();
        cfg.rho_grid.retain(|&r| r <= FGM_GRID_CAP + 1e-12);
        if cfg.rho_grid.len() < before {
            eprintln!(
                "warning: fgm grid capped at rho = {FGM_GRID_CAP} ({} point(s) dropped)",
                before - cfg.rho_grid.len()
            );
        }
    }

    let started = Instant::now();
    let report = run_campaign(&cfg).map_err(|e| CliError::new(5, e.to_string()))?;
    let elapsed = started.elapsed();

    let curves_path = format!("{out}_curves.csv");
    let report_path = format!("{out}_report.json");
    std::fs::write(&curves_path, report.curves_csv())
        .map_err(|e| CliError::new(5, format!("cannot write `{curves_path}`: {e}")))?;
    std::fs::write(&report_path, report.to_json())
        .map_err(|e| CliError::new(5, format!("cannot write `{report_path}`: {e}")))?;

    match report.efficiency_table_text() {
        Ok(table) => print!("{table}"),
        Err(e) => eprintln!("note: efficiency matrix unavailable: {e}"),
    }
    eprintln!(
        "wrote {curves_path} and {report_path} in {:.2}s",
        elapsed.as_secs_f64()
    );
    Ok(())
}

fn cmd_tables(
    model: &str,
    replicates: usize,
    seed: Option<u64>,
    csv: bool,
) -> Result<(), CliError> {
    let family = match model {
        "normal" => ModelFamily::default_normal(),
        "fgm" => ModelFamily::default_fgm(),
        other => return Err(CliError::new(2, format!("unknown model `{other}`"))),
    };
    let seed = resolve_seed(seed, DEFAULT_SEED);
    let mut cfg = CampaignConfig::defaults(family, replicates, seed);
    // the table needs only the reporting cells
    cfg.rho_grid = cfg.reporting_rhos.clone();

    let started = Instant::now();
    let report = run_campaign(&cfg).map_err(|e| CliError::new(5, e.to_string()))?;
    let out = if csv {
        report.efficiency_csv()
    } else {
        report.efficiency_table_text()
    }
    .map_err(|e| CliError::new(5, e.to_string()))?;
    print!("{out}");
    eprintln!(
        "model={} n={} replicates={} seed={} ({:.2}s)",
        cfg.model.name(),
        cfg.n,
        cfg.replicates,
        cfg.seed,
        started.elapsed().as_secs_f64()
    );
    Ok(())
}
