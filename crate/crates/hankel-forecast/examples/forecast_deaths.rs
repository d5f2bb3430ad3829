//! Forecasting the last six months of the USA accidental-deaths series
//! under the three weighting schemes, with budgets calibrated from
//! rank-3/6/12 truncations, plus published benchmark forecasts for
//! comparison.
//!
//! Needs `data/deaths.csv` (bundled with the repository).
//!
//! ```bash
//! cargo run --release --example forecast_deaths
//! ```

use hankel_forecast::error::Error;
use hankel_forecast::experiments::{
    datasets, run_forecast, BudgetSpec, ForecastRequest, DEATHS_BENCHMARKS,
};
use hankel_forecast::solver::SolverConfig;
use hankel_forecast::weights::WeightSpec;

fn main() {
    let deaths = match datasets::load_deaths(datasets::default_data_dir()) {
        Ok(d) => d,
        Err(Error::MissingDataset(path)) => {
            eprintln!("skipping: dataset not found at {path} (see data/README.md)");
            return;
        }
        Err(e) => panic!("failed to load series: {e}"),
    };
    println!(
        "known: {} observations, holdout: {:?}",
        deaths.known.len(),
        deaths.holdout
    );

    let schemes = [
        ("trapezoid", WeightSpec::Trapezoid),
        ("uniform", WeightSpec::Uniform),
        ("exponential(0.05)", WeightSpec::Exponential { alpha: 0.05 }),
    ];

    println!("\nscheme             rank  tau          sqrt-MSE");
    for (name, spec) in &schemes {
        for rank in [3usize, 6, 12] {
            let request = ForecastRequest {
                window: Some(24),
                missing: 6,
                weights: spec.clone(),
                budget: BudgetSpec::CalibrateRank(rank),
                solver: SolverConfig::default(),
            };
            let outcome = run_forecast(&deaths.known, Some(&deaths.holdout), &request)
                .expect("solve should run");
            println!(
                "{name:18} {rank:4}  {:11.2}  {:8.2}",
                outcome.tau,
                outcome.sqrt_mse.unwrap()
            );
        }
    }

    println!("\npublished benchmarks on the same holdout:");
    for (name, _, err) in DEATHS_BENCHMARKS {
        println!("{name:24} sqrt-MSE {err:8.2}");
    }
}
