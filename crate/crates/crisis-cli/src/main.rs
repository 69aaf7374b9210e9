//! `crisis` — batch analytics for the crisis diffusion model.
//!
//! ```text
//! crisis price    --s0 100 --strike 100 --rate 0.05 --sigma 0.2 --alpha 0 --maturity 1
//! crisis greeks   --s0 100 --strike 100 --rate 0.05 --sigma 0.2 --alpha 2 --maturity 1
//! crisis surface  ... --axis S:80:120:41 --axis sigma:0.1:0.5:9 --format csv
//! crisis simulate --s0 100 --rate 0.05 --sigma 0.2 --alpha 2 --maturity 1 --paths 8 --seed 42
//! crisis validate --grid default --paths 1000000 --seed 42
//! ```
//!
//! Results go to stdout (JSON by default, CSV with `--format csv`);
//! diagnostics go to stderr. Exit codes: 0 success, 1 domain violation
//! (named on stderr), 2 usage error, 3 validation failure.

mod render;

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crisis_pricing::surface::{evaluate, Axis, GridVar};
use crisis_pricing::validate::run_validation;
use crisis_pricing::{
    ladder, price, simulate_paths, Error as ModelError, GreekLadder, MarketState, ModelParams,
    OptionKind, Strike,
};

#[derive(Parser)]
#[command(
    name = "crisis",
    version,
    about = "Pricing, sensitivities and validation for a crisis diffusion model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price a single European option
    Price(PointArgs),
    /// Full first/second-order sensitivity ladder at a point
    Greeks(GreeksArgs),
    /// Sensitivity ladders over a one- or two-axis grid
    Surface(SurfaceArgs),
    /// Sample paths of the underlying on a time grid
    Simulate(SimulateArgs),
    /// Run the verification suites and emit the discrepancy ledger
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct PointArgs {
    /// Initial asset level S_0
    #[arg(long, allow_negative_numbers = true)]
    s0: Option<f64>,
    /// Strike K
    #[arg(long, allow_negative_numbers = true)]
    strike: Option<f64>,
    /// Continuously compounded rate r (per year)
    #[arg(long, allow_negative_numbers = true)]
    rate: Option<f64>,
    /// Volatility sigma (per sqrt-year)
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    /// Crisis coefficient alpha (price units per sqrt-year)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Maturity T (years)
    #[arg(long, allow_negative_numbers = true)]
    maturity: Option<f64>,
    /// Evaluation time t in [0, T) (years) [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    time: Option<f64>,
    /// Observed spot S_t [default: --s0]
    #[arg(long, allow_negative_numbers = true)]
    spot: Option<f64>,
    /// Option kind: call or put [default: call]
    #[arg(long)]
    kind: Option<String>,
    /// JSON parameter file; explicit flags override file values
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
    /// Human-readable rounded output instead of machine precision
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct GreeksArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Report theta per calendar day (divides the per-year value by 365)
    #[arg(long)]
    per_day: bool,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Grid axis VAR:START:STOP:COUNT with VAR in {S, K, sigma, alpha, T, t};
    /// repeat for a second axis
    #[arg(long = "axis", value_name = "SPEC")]
    axes: Vec<String>,
    /// Report theta per calendar day (divides the per-year value by 365)
    #[arg(long)]
    per_day: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Number of simulated paths
    #[arg(long, default_value_t = 10)]
    paths: u64,
    /// RNG seed; fully determines the output
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Mirror each even path's draws on the following odd path
    #[arg(long)]
    antithetic: bool,
    /// Time grid t:START:STOP:COUNT [default: t:0:T:51]
    #[arg(long = "axis", value_name = "SPEC")]
    axis: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Validation grid preset (only `default` is defined)
    #[arg(long, default_value = "default")]
    grid: String,
    /// Monte Carlo paths for the consistency and martingale suites
    #[arg(long, default_value_t = 1_000_000)]
    paths: u64,
    /// RNG seed; fully determines the Monte Carlo suites
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output format (validate emits JSON only)
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
}

enum CliError {
    Usage(String),
    Domain(ModelError),
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            // Configuration mistakes come from flag values, not the model.
            ModelError::NoPaths
            | ModelError::OddAntitheticPaths { .. }
            | ModelError::BadTimeGrid
            | ModelError::BadAxis { .. } => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

/// The documented JSON parameter-file schema; flags override these values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    s0: Option<f64>,
    rate: Option<f64>,
    sigma: Option<f64>,
    alpha: Option<f64>,
    maturity: Option<f64>,
    time: Option<f64>,
    strike: Option<f64>,
    kind: Option<String>,
}

struct Resolved {
    params: ModelParams,
    state: MarketState,
    strike: Strike,
    kind: OptionKind,
}

fn load_params_file(path: &PathBuf) -> Result<ParamsFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid parameter file {}: {e}", path.display())))
}

fn require(name: &str, flag: Option<f64>, file: Option<f64>) -> Result<f64, CliError> {
    flag.or(file)
        .ok_or_else(|| CliError::Usage(format!("missing required value --{name}")))
}

fn resolve(args: &PointArgs) -> Result<Resolved, CliError> {
    let file = match &args.params {
        Some(path) => load_params_file(path)?,
        None => ParamsFile::default(),
    };
    let s0 = require("s0", args.s0, file.s0)?;
    let rate = require("rate", args.rate, file.rate)?;
    let sigma = require("sigma", args.sigma, file.sigma)?;
    let alpha = require("alpha", args.alpha, file.alpha)?;
    let maturity = require("maturity", args.maturity, file.maturity)?;
    let strike = require("strike", args.strike, file.strike)?;
    let time = args.time.or(file.time).unwrap_or(0.0);
    let spot = args.spot.unwrap_or(s0);
    let kind_str = args
        .kind
        .clone()
        .or(file.kind)
        .unwrap_or_else(|| "call".to_string());
    let kind = OptionKind::from_str(&kind_str).map_err(CliError::Usage)?;
    Ok(Resolved {
        params: ModelParams::new(s0, rate, sigma, alpha, maturity)?,
        state: MarketState::new(time, spot)?,
        strike: Strike::new(strike)?,
        kind,
    })
}

fn parse_axis(spec: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "axis `{spec}` must be VAR:START:STOP:COUNT"
        )));
    }
    let var = GridVar::from_str(parts[0]).map_err(CliError::Usage)?;
    let parse_f = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("axis `{spec}`: `{s}` is not a number")))
    };
    let count = parts[3]
        .parse::<usize>()
        .map_err(|_| CliError::Usage(format!("axis `{spec}`: `{}` is not a count", parts[3])))?;
    Ok(Axis::new(
        var,
        parse_f(parts[1])?,
        parse_f(parts[2])?,
        count,
    )?)
}

fn per_day_view(ladder: &GreekLadder, per_day: bool) -> GreekLadder {
    let mut view = *ladder;
    if per_day {
        view.theta /= 365.0;
    }
    view
}

fn emit(payload: &str) {
    print!("{payload}");
    if !payload.ends_with('\n') {
        println!();
    }
}

fn cmd_price(args: &PointArgs) -> Result<i32, CliError> {
    let r = resolve(args)?;
    let value = price(r.params, r.state, r.strike, r.kind)?.value();
    if args.pretty {
        emit(&format!("price {value:.6}"));
        return Ok(0);
    }
    match args.format {
        OutputFormat::Json => emit(&serde_json::json!({ "price": value }).to_string()),
        OutputFormat::Csv => emit(&format!("price\n{}\n", render::fmt(value))),
    }
    Ok(0)
}

fn cmd_greeks(args: &GreeksArgs) -> Result<i32, CliError> {
    let r = resolve(&args.point)?;
    let full = ladder(r.params, r.state, r.strike, r.kind)?;
    let view = per_day_view(&full, args.per_day);
    if args.point.pretty {
        emit(&render::ladder_pretty(&view));
        return Ok(0);
    }
    match args.point.format {
        OutputFormat::Json => emit(&render::ladder_json(&view).to_string()),
        OutputFormat::Csv => emit(&render::ladder_csv(&view)),
    }
    Ok(0)
}

fn cmd_surface(args: &SurfaceArgs) -> Result<i32, CliError> {
    let r = resolve(&args.point)?;
    if args.axes.is_empty() || args.axes.len() > 2 {
        return Err(CliError::Usage(format!(
            "surface needs one or two --axis specs, got {}",
            args.axes.len()
        )));
    }
    let axes: Vec<Axis> = args
        .axes
        .iter()
        .map(|s| parse_axis(s))
        .collect::<Result<_, _>>()?;
    let mut surface = evaluate(r.params, r.state, r.strike, r.kind, &axes)?;
    if args.per_day {
        for row in &mut surface.rows {
            row.ladder.theta /= 365.0;
        }
    }
    match args.point.format {
        OutputFormat::Json => emit(&render::surface_json(&surface).to_string()),
        OutputFormat::Csv => emit(&render::surface_csv(&surface)),
    }
    Ok(0)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<i32, CliError> {
    // Simulation needs the model only; strike/kind are irrelevant, so they
    // default when absent instead of being required.
    let file = match &args.point.params {
        Some(path) => load_params_file(path)?,
        None => ParamsFile::default(),
    };
    let s0 = require("s0", args.point.s0, file.s0)?;
    let rate = require("rate", args.point.rate, file.rate)?;
    let sigma = require("sigma", args.point.sigma, file.sigma)?;
    let alpha = require("alpha", args.point.alpha, file.alpha)?;
    let maturity = require("maturity", args.point.maturity, file.maturity)?;
    let params = ModelParams::new(s0, rate, sigma, alpha, maturity)?;

    let times: Vec<f64> = match &args.axis {
        Some(spec) => {
            let axis = parse_axis(spec)?;
            if axis.var != GridVar::Time {
                return Err(CliError::Usage(format!(
                    "simulate accepts only a t axis, got {}",
                    axis.var.name()
                )));
            }
            (0..axis.count)
                .map(|i| axis.start + (axis.stop - axis.start) * i as f64 / (axis.count - 1) as f64)
                .collect()
        }
        None => (0..=50).map(|i| maturity * i as f64 / 50.0).collect(),
    };
    let rows = simulate_paths(&params, &times, args.paths, args.seed, args.antithetic)?;
    match args.point.format {
        OutputFormat::Json => emit(&render::paths_json(&times, &rows).to_string()),
        OutputFormat::Csv => emit(&render::paths_csv(&times, &rows)),
    }
    Ok(0)
}

fn cmd_validate(args: &ValidateArgs) -> Result<i32, CliError> {
    if args.grid != "default" {
        return Err(CliError::Usage(format!(
            "unknown validation grid `{}` (only `default` is defined)",
            args.grid
        )));
    }
    if args.format != OutputFormat::Json {
        return Err(CliError::Usage(
            "validate emits JSON only; drop --format csv".to_string(),
        ));
    }
    eprintln!(
        "running validation suites ({} antithetic paths, seed {}) ...",
        args.paths, args.seed
    );
    let report = run_validation(args.paths, args.seed)?;
    for suite in &report.suites {
        eprintln!(
            "{} {}: {}",
            if suite.passed { "PASS" } else { "FAIL" },
            suite.name,
            suite.detail
        );
    }
    eprintln!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
    emit(&serde_json::to_string(&report).expect("report serializes"));
    Ok(if report.passed { 0 } else { 3 })
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Price(args) => cmd_price(args),
        Command::Greeks(args) => cmd_greeks(args),
        Command::Surface(args) => cmd_surface(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match dispatch(&cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}
