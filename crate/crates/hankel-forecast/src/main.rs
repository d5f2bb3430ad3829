//! Command-line driver. All logic lives in the library; each subcommand
//! parses flags, calls one harness, and writes CSV results plus a JSON
//! metadata echo.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hankel_forecast::error::Error;
use hankel_forecast::experiments::csv_io::{self, Cell, TableFormat};
use hankel_forecast::experiments::{
    self, BudgetSpec, ForecastRequest, PhaseSweepConfig, RankSweepConfig, SimulationCase,
    SimulationConfig, SurfaceConfig,
};
use hankel_forecast::solver::{SolverConfig, SolverStatus};
use hankel_forecast::theory;
use hankel_forecast::weights::WeightSpec;
use hankel_forecast::TimeSeries;

#[derive(Parser, serde::Serialize)]
#[command(
    name = "hankel-forecast",
    about = "Forecast and denoise time series by nuclear-norm completion of Hankel matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, serde::Serialize)]
enum Command {
    /// Forecast the next values of a series.
    Forecast(ForecastArgs),
    /// Denoise a series without forecasting (missing count 0).
    Approximate(ApproximateArgs),
    /// Report calibrated budgets for ranks and weighting schemes.
    Calibrate(CalibrateArgs),
    /// Rank-one success diagram over modulus and missing count.
    SweepPhase(SweepPhaseArgs),
    /// Randomized success probabilities over modulus, missing count and
    /// number of cosine terms.
    SweepRank(SweepRankArgs),
    /// Noisy-signal forecasting study across weighting schemes.
    Simulate(SimulateArgs),
    /// Forecast error surface over weighting rate and budget.
    AlphaTau(AlphaTauArgs),
    /// Closed-form success bounds and optimal window lengths.
    Bounds(BoundsArgs),
    /// Optimality certificate for a candidate completion.
    Certificate(CertificateArgs),
}

#[derive(Args, serde::Serialize, Clone)]
struct SolverArgs {
    /// Iteration cap for the splitting solver.
    #[arg(long, default_value_t = 5000)]
    max_iter: usize,
    /// Absolute stopping tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol_abs: f64,
    /// Relative stopping tolerance.
    #[arg(long, default_value_t = 1e-6)]
    tol_rel: f64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            max_iterations: self.max_iter,
            tol_abs: self.tol_abs,
            tol_rel: self.tol_rel,
            ..Default::default()
        }
    }
}

#[derive(Args, serde::Serialize, Clone)]
struct WeightArgs {
    /// Weighting scheme for the data-fit norm.
    #[arg(long, value_parser = ["trapezoid", "uniform", "exp"], default_value = "uniform")]
    weights: String,
    /// Rate of the exponential weighting scheme.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

impl WeightArgs {
    fn spec(&self) -> WeightSpec {
        match self.weights.as_str() {
            "trapezoid" => WeightSpec::Trapezoid,
            "exp" => WeightSpec::Exponential { alpha: self.alpha },
            _ => WeightSpec::Uniform,
        }
    }
}

#[derive(Args, serde::Serialize, Clone)]
struct FormatArgs {
    /// Result-file format.
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    format: String,
}

impl FormatArgs {
    fn table(&self) -> TableFormat {
        if self.format == "json" {
            TableFormat::Json
        } else {
            TableFormat::Csv
        }
    }
}

#[derive(Args, serde::Serialize)]
struct ForecastArgs {
    /// Input CSV, one value per row.
    #[arg(long)]
    input: PathBuf,
    /// Output CSV of the completed series.
    #[arg(long)]
    output: PathBuf,
    /// Number of values to forecast.
    #[arg(long)]
    missing: usize,
    /// Window length; omit for the near-square optimum.
    #[arg(long, conflicts_with = "auto_window")]
    window: Option<usize>,
    /// Pick the near-square window automatically (the default when no
    /// window is given).
    #[arg(long)]
    auto_window: bool,
    /// Treat the last `missing` input rows as held-out truth and report
    /// the forecast error against them.
    #[arg(long)]
    holdout: bool,
    /// Explicit budget.
    #[arg(long, conflicts_with = "calibrate_rank")]
    tau: Option<f64>,
    /// Calibrate the budget from this truncation rank.
    #[arg(long)]
    calibrate_rank: Option<usize>,
    #[command(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct ApproximateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, conflicts_with = "calibrate_rank")]
    tau: Option<f64>,
    #[arg(long)]
    calibrate_rank: Option<usize>,
    #[command(flatten)]
    weight: WeightArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct CalibrateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    window: usize,
    /// Truncation ranks, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3,6,12")]
    ranks: Vec<usize>,
    /// Rate of the exponential scheme in the report.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct SweepPhaseArgs {
    #[arg(long)]
    output: PathBuf,
    /// Square window length.
    #[arg(long, default_value_t = 13)]
    window: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3"
    )]
    rhos: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1,2,3,4,5,6,7,8,9,10,11,12"
    )]
    missing: Vec<usize>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct SweepRankArgs {
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 13)]
    window: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3"
    )]
    rhos: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1,2,3,4,5,6,7,8,9,10,11,12"
    )]
    missing: Vec<usize>,
    /// Cosine term counts; each term contributes Hankel rank 2.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    terms: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    realizations: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct SimulateArgs {
    #[arg(long)]
    output: PathBuf,
    /// Which simulated signal: 1 = steady cosine, 2 = growing cosine.
    #[arg(long, value_parser = ["1", "2"])]
    case: String,
    #[arg(long, default_value_t = 100)]
    length: usize,
    #[arg(long, default_value_t = 30)]
    window: usize,
    #[arg(long, default_value_t = 0.1)]
    sigma: f64,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15"
    )]
    missing: Vec<usize>,
    #[arg(long, default_value_t = 50)]
    repetitions: usize,
    #[arg(long, default_value_t = 2)]
    calibrate_rank: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct AlphaTauArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Held-out window length scored by the surface.
    #[arg(long, default_value_t = 6)]
    missing: usize,
    #[arg(long, default_value_t = 24)]
    window: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08,0.09,0.1"
    )]
    alphas: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1000,2000,3000,4000,5000,6000,7000,8000,9000,10000,11000,12000"
    )]
    taus: Vec<f64>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct BoundsArgs {
    #[arg(long)]
    output: PathBuf,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5,0.7,0.9,1.0,1.1,1.25,1.5"
    )]
    rhos: Vec<f64>,
    #[arg(long, default_value_t = 13)]
    window: usize,
    #[arg(long, default_value_t = 13)]
    cols: usize,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args, serde::Serialize)]
struct CertificateArgs {
    /// Candidate completion of length n + m, one value per row.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    window: usize,
    #[arg(long)]
    missing: usize,
    /// Relative singular-value cutoff for the numerical rank.
    #[arg(long, default_value_t = 1e-9)]
    rank_tol: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap routes --help and --version through the error path too
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::MissingDataset(_) => 3,
                Error::Overflow(_) | Error::DegenerateRecurrence(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

#[derive(serde::Serialize)]
struct RunMetadata<'a, C: serde::Serialize> {
    version: &'static str,
    config: &'a C,
    diagnostics: serde_json::Value,
}

fn write_metadata<C: serde::Serialize>(
    output: &Path,
    config: &C,
    diagnostics: serde_json::Value,
) -> Result<(), Error> {
    csv_io::write_json(
        output.with_extension("meta.json"),
        &RunMetadata {
            version: env!("CARGO_PKG_VERSION"),
            config,
            diagnostics,
        },
    )
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Forecast(args) => run_forecast_cmd(args, args.missing),
        Command::Approximate(args) => {
            let forecast_args = ForecastArgs {
                input: args.input.clone(),
                output: args.output.clone(),
                missing: 0,
                window: args.window,
                auto_window: false,
                holdout: false,
                tau: args.tau,
                calibrate_rank: args.calibrate_rank,
                weight: args.weight.clone(),
                solver: args.solver.clone(),
                fmt: args.fmt.clone(),
            };
            run_forecast_cmd(&forecast_args, 0)
        }
        Command::Calibrate(args) => {
            let (series, _) = experiments::ingest_csv(&args.input)?;
            let schemes = vec![
                ("trapezoid".to_string(), WeightSpec::Trapezoid),
                ("uniform".to_string(), WeightSpec::Uniform),
                (
                    "exponential".to_string(),
                    WeightSpec::Exponential { alpha: args.alpha },
                ),
            ];
            let rows = experiments::run_calibration(&series, args.window, &schemes, &args.ranks)?;
            let table: Vec<Vec<Cell>> = rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Text(r.scheme.clone()),
                        Cell::Int(r.rank as i64),
                        Cell::Num(r.tau),
                    ]
                })
                .collect();
            csv_io::write_table(
                &args.output,
                args.fmt.table(),
                &["scheme", "rank", "tau"],
                &table,
            )?;
            write_metadata(&args.output, args, serde_json::json!({"rows": rows.len()}))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepPhase(args) => {
            let config = PhaseSweepConfig {
                rhos: args.rhos.clone(),
                missing: args.missing.clone(),
                window: args.window,
                solver: args.solver.config(),
            };
            let sweep = experiments::sweep_phase(&config)?;
            let mut rows: Vec<Vec<Cell>> = Vec::new();
            let mut limited = 0usize;
            for cell in &sweep.cells {
                let is_limited = matches!(cell.outcome, theory::ProbeOutcome::SolverLimit { .. });
                limited += usize::from(is_limited);
                rows.push(vec![
                    Cell::Num(cell.rho),
                    Cell::Int(cell.missing as i64),
                    Cell::Int(i64::from(cell.outcome.is_success())),
                    Cell::Int(i64::from(is_limited)),
                    Cell::Int(i64::from(cell.inside_bound)),
                    Cell::Num(cell.outcome.gap()),
                ]);
            }
            csv_io::write_table(
                &args.output,
                args.fmt.table(),
                &[
                    "rho",
                    "missing",
                    "success",
                    "solver_limited",
                    "inside_bound",
                    "gap",
                ],
                &rows,
            )?;
            let overlay: Vec<Vec<Cell>> = sweep
                .bound_overlay
                .iter()
                .map(|(rho, m)| vec![Cell::Num(*rho), Cell::Int(*m)])
                .collect();
            csv_io::write_table(
                args.output.with_extension("bounds.csv"),
                args.fmt.table(),
                &["rho", "max_missing"],
                &overlay,
            )?;
            write_metadata(
                &args.output,
                args,
                serde_json::json!({"cells": sweep.cells.len(), "solver_limited": limited}),
            )?;
            Ok(if limited > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::SweepRank(args) => {
            let config = RankSweepConfig {
                rhos: args.rhos.clone(),
                missing: args.missing.clone(),
                terms: args.terms.clone(),
                window: args.window,
                realizations: args.realizations,
                seed: args.seed,
                solver: args.solver.config(),
            };
            let cells = experiments::sweep_rank(&config)?;
            let rows: Vec<Vec<Cell>> = cells
                .iter()
                .map(|c| {
                    vec![
                        Cell::Num(c.rho),
                        Cell::Int(c.missing as i64),
                        Cell::Int(c.terms as i64),
                        Cell::Int(2 * c.terms as i64),
                        Cell::Int(c.successes as i64),
                        Cell::Int(c.solver_limited as i64),
                        Cell::Int(c.skipped as i64),
                        Cell::Int(c.attempts as i64),
                        Cell::Num(c.success_probability()),
                    ]
                })
                .collect();
            csv_io::write_table(
                &args.output,
                args.fmt.table(),
                &[
                    "rho",
                    "missing",
                    "terms",
                    "hankel_rank",
                    "successes",
                    "solver_limited",
                    "skipped",
                    "attempts",
                    "success_probability",
                ],
                &rows,
            )?;
            let limited: usize = cells.iter().map(|c| c.solver_limited).sum();
            write_metadata(
                &args.output,
                args,
                serde_json::json!({"cells": cells.len(), "solver_limited": limited}),
            )?;
            Ok(if limited > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Simulate(args) => {
            let case = if args.case == "1" {
                SimulationCase::Cosine
            } else {
                SimulationCase::GrowingCosine
            };
            let config = SimulationConfig {
                case,
                length: args.length,
                window: args.window,
                noise_sigma: args.sigma,
                horizons: args.missing.clone(),
                repetitions: args.repetitions,
                calibration_rank: args.calibrate_rank,
                alpha: args.alpha,
                seed: args.seed,
                solver: args.solver.config(),
            };
            let rows = experiments::run_simulation(&config)?;
            let table: Vec<Vec<Cell>> = rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::Text(r.scheme.clone()),
                        Cell::Int(r.horizon as i64),
                        Cell::Num(r.mean_sqrt_mse),
                    ]
                })
                .collect();
            csv_io::write_table(
                &args.output,
                args.fmt.table(),
                &["scheme", "missing", "mean_sqrt_mse"],
                &table,
            )?;
            write_metadata(&args.output, args, serde_json::json!({"rows": rows.len()}))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::AlphaTau(args) => {
            let (series, _) = experiments::ingest_csv(&args.input)?;
            if series.len() <= args.missing {
                return Err(Error::Shape(format!(
                    "series of length {} cannot hold out {} values",
                    series.len(),
                    args.missing
                )));
            }
            let split = series.len() - args.missing;
            let known = TimeSeries::new(series.values()[..split].to_vec())?;
            let holdout = series.values()[split..].to_vec();
            let config = SurfaceConfig {
                alphas: args.alphas.clone(),
                taus: args.taus.clone(),
                window: args.window,
                solver: args.solver.config(),
            };
            let surface = experiments::alpha_tau_surface(&known, &holdout, &config)?;
            let rows: Vec<Vec<Cell>> = surface
                .cells
                .iter()
                .map(|c| {
                    vec![
                        Cell::Num(c.alpha),
                        Cell::Num(c.tau),
                        Cell::Num(c.sqrt_mse),
                        Cell::Num(c.log_sqrt_mse),
                    ]
                })
                .collect();
            csv_io::write_table(
                &args.output,
                args.fmt.table(),
                &["alpha", "tau", "sqrt_mse", "log_sqrt_mse"],
                &rows,
            )?;
            write_metadata(
                &args.output,
                args,
                serde_json::json!({
                    "argmin": {
                        "alpha": surface.argmin.alpha,
                        "tau": surface.argmin.tau,
                        "sqrt_mse": surface.argmin.sqrt_mse,
                    }
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds(args) => {
            let mut rows: Vec<Vec<Cell>> = Vec::new();
            for &rho in &args.rhos {
                let budget = theory::max_missing(rho, args.window, args.cols);
                let c_at_zero = theory::c_rho(rho, args.window, args.cols, 0);
                rows.push(vec![
                    Cell::Num(rho),
                    Cell::Num(budget.bound_on_m_plus_one),
                    Cell::Int(budget.max_missing),
                    Cell::Num(c_at_zero),
                ]);
            }
            csv_io::write_table(
                &args.output,
                args.fmt.table(),
                &["rho", "bound_on_m_plus_one", "max_missing", "c_rho_at_m0"],
                &rows,
            )?;
            let total = args.window + args.cols - 1;
            write_metadata(
                &args.output,
                args,
                serde_json::json!({
                    "optimal_window_for_total": {
                        "total": total,
                        "window": theory::optimal_window(total, 0),
                    }
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certificate(args) => {
            let (series, _) = experiments::ingest_csv(&args.input)?;
            let total = series.len();
            if args.missing >= total {
                return Err(Error::Shape("missing count must leave known data".into()));
            }
            if args.window > total {
                return Err(Error::Shape(format!(
                    "window {} exceeds series length {total}",
                    args.window
                )));
            }
            let shape = hankel_forecast::HankelShape::new(
                args.window,
                total + 1 - args.window,
                total - args.missing,
                args.missing,
            )?;
            let report = theory::certificate_check(&series, &shape, args.rank_tol)?;
            csv_io::write_json(
                &args.output,
                &serde_json::json!({
                    "spectral_norm": report.spectral_norm,
                    "constraint_residual": report.constraint_residual,
                    "verdict": format!("{:?}", report.verdict),
                    "rank": report.rank,
                }),
            )?;
            println!(
                "verdict {:?}; certificate spectral norm {:.6e}",
                report.verdict, report.spectral_norm
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_forecast_cmd(args: &ForecastArgs, missing: usize) -> Result<ExitCode, Error> {
    let (series, report) = experiments::ingest_csv(&args.input)?;
    let (known, holdout): (TimeSeries, Option<Vec<f64>>) = if args.holdout && missing > 0 {
        if series.len() <= missing {
            return Err(Error::Shape(format!(
                "series of length {} cannot hold out {missing} values",
                series.len()
            )));
        }
        let split = series.len() - missing;
        (
            TimeSeries::new(series.values()[..split].to_vec())?,
            Some(series.values()[split..].to_vec()),
        )
    } else {
        (series, None)
    };

    let budget = match (args.tau, args.calibrate_rank) {
        (Some(tau), _) => BudgetSpec::Tau(tau),
        (None, Some(rank)) => BudgetSpec::CalibrateRank(rank),
        (None, None) => BudgetSpec::Exact,
    };
    let request = ForecastRequest {
        window: args.window,
        missing,
        weights: args.weight.spec(),
        budget,
        solver: args.solver.config(),
    };
    let outcome = experiments::run_forecast(&known, holdout.as_deref(), &request)?;

    let n = known.len();
    let rows: Vec<Vec<Cell>> = outcome
        .result
        .completed
        .iter()
        .enumerate()
        .map(|(i, v)| {
            vec![
                Cell::Int(i as i64 + 1),
                Cell::Num(*v),
                Cell::Int(i64::from(i >= n)),
            ]
        })
        .collect();
    csv_io::write_table(
        &args.output,
        args.fmt.table(),
        &["index", "value", "is_forecast"],
        &rows,
    )?;

    let singular: Vec<Vec<Cell>> = outcome
        .result
        .singular_values
        .iter()
        .enumerate()
        .map(|(i, s)| vec![Cell::Int(i as i64 + 1), Cell::Num(*s)])
        .collect();
    csv_io::write_table(
        args.output.with_extension("singular.csv"),
        args.fmt.table(),
        &["index", "singular_value"],
        &singular,
    )?;

    write_metadata(
        &args.output,
        args,
        serde_json::json!({
            "ingest": report,
            "window": outcome.shape.window(),
            "cols": outcome.shape.cols(),
            "tau": outcome.tau,
            "iterations": outcome.result.iterations,
            "status": format!("{:?}", outcome.status()),
            "nuclear_norm": outcome.result.nuclear_norm,
            "sqrt_mse": outcome.sqrt_mse,
        }),
    )?;

    println!(
        "completed {} values ({} forecast); nuclear norm {:.6e}; {}",
        outcome.result.completed.len(),
        missing,
        outcome.result.nuclear_norm,
        match outcome.sqrt_mse {
            Some(e) => format!("sqrt-MSE vs holdout {e:.4}"),
            None => "no holdout".to_string(),
        }
    );

    Ok(if outcome.status() == SolverStatus::IterationLimit {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
