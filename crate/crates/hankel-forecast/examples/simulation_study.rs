//! Noisy-signal forecasting study, reduced for a quick run: a growing
//! cosine with Gaussian noise, forecast at several horizons under the
//! three weighting schemes. Exponential weighting wins on the growing
//! signal, and its edge widens with the horizon.
//!
//! ```bash
//! cargo run --release --example simulation_study
//! ```

use hankel_forecast::experiments::{run_simulation, SimulationCase, SimulationConfig};

fn main() {
    for case in [SimulationCase::Cosine, SimulationCase::GrowingCosine] {
        let config = SimulationConfig {
            horizons: vec![2, 5, 8, 11, 14],
            repetitions: 10,
            ..SimulationConfig::standard(case, 2026)
        };
        let rows = run_simulation(&config).expect("study should run");

        println!("\n{case:?} (10 repetitions, noise 0.1):");
        println!("  m | trapezoid | uniform | exponential");
        for &horizon in &config.horizons {
            let get = |scheme: &str| {
                rows.iter()
                    .find(|r| r.scheme == scheme && r.horizon == horizon)
                    .unwrap()
                    .mean_sqrt_mse
            };
            println!(
                "{horizon:3} | {:9.4} | {:7.4} | {:11.4}",
                get("trapezoid"),
                get("uniform"),
                get("exponential")
            );
        }
    }
    println!("\n(the full study uses 50 repetitions and horizons 1..=15; see the");
    println!(" `simulate` subcommand of the command-line tool)");
}
