//! Denoising (approximation without forecasting) of the monthly fortified
//! wine sales series at three calibrated budgets, showing how the budget
//! controls the complexity of the approximation through the singular
//! value profile.
//!
//! Needs `data/wine.csv`, which is not bundled; see data/README.md for
//! where to get it. Skips politely when absent.
//!
//! ```bash
//! cargo run --release --example approximate_wine
//! ```

use hankel_forecast::error::Error;
use hankel_forecast::experiments::{datasets, run_forecast, BudgetSpec, ForecastRequest};
use hankel_forecast::solver::SolverConfig;
use hankel_forecast::weights::WeightSpec;

fn main() {
    let wine = match datasets::load_wine(datasets::default_data_dir()) {
        Ok(w) => w,
        Err(Error::MissingDataset(path)) => {
            eprintln!("skipping: dataset not found at {path} (see data/README.md)");
            return;
        }
        Err(e) => panic!("failed to load series: {e}"),
    };
    println!(
        "{} observations, window 60, trapezoid weights",
        wine.known.len()
    );

    for rank in [1usize, 3, 10] {
        let request = ForecastRequest {
            window: Some(60),
            missing: 0,
            weights: WeightSpec::Trapezoid,
            budget: BudgetSpec::CalibrateRank(rank),
            solver: SolverConfig::default(),
        };
        let outcome = run_forecast(&wine.known, None, &request).expect("solve should run");
        let sigma = &outcome.result.singular_values;
        let kept = sigma.iter().filter(|s| **s > 1e-6 * sigma[0]).count();
        println!(
            "rank {rank:2}: tau = {:12.2}, {} singular values above 1e-6 of the top, \
             sqrt of first five: {:?}",
            outcome.tau,
            kept,
            sigma
                .iter()
                .take(5)
                .map(|s| format!("{:.1}", s.sqrt()))
                .collect::<Vec<_>>()
        );
    }
}
