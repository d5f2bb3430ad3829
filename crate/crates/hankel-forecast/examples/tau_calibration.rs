//! Budget calibration from truncated embeddings: the budget is the
//! weighted distance between the series and the diagonal-averaged best
//! rank-r approximation of its Hankel matrix, so the convex completion is
//! at least as close to the data as the classical truncation.
//!
//! ```bash
//! cargo run --example tau_calibration
//! ```

use hankel_forecast::experiments::{run_calibration, run_forecast, BudgetSpec, ForecastRequest};
use hankel_forecast::solver::SolverConfig;
use hankel_forecast::weights::WeightSpec;
use hankel_forecast::TimeSeries;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let values: Vec<f64> = (1..=60)
        .map(|k| {
            let k = k as f64;
            3.0 * (2.0 * std::f64::consts::PI * k / 12.0).cos()
                + 0.05 * k
                + 0.3 * rng.gen_range(-1.0..1.0)
        })
        .collect();
    let series = TimeSeries::new(values).unwrap();

    let schemes = vec![
        ("trapezoid".to_string(), WeightSpec::Trapezoid),
        ("uniform".to_string(), WeightSpec::Uniform),
        (
            "exponential".to_string(),
            WeightSpec::Exponential { alpha: 0.05 },
        ),
    ];
    let rows = run_calibration(&series, 24, &schemes, &[1, 3, 6, 12]).unwrap();

    println!("scheme        rank |  tau");
    for row in &rows {
        println!("{:13} {:4} | {:10.4}", row.scheme, row.rank, row.tau);
    }

    // the calibrated solve keeps its promise: distance within budget
    let request = ForecastRequest {
        window: Some(24),
        missing: 0,
        weights: WeightSpec::Uniform,
        budget: BudgetSpec::CalibrateRank(3),
        solver: SolverConfig::default(),
    };
    let outcome = run_forecast(&series, None, &request).unwrap();
    let distance: f64 = outcome
        .result
        .completed
        .iter()
        .zip(series.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    println!(
        "\nuniform rank-3 budget {:.4}; achieved distance {distance:.4}; \
         nuclear norm {:.4}",
        outcome.tau, outcome.result.nuclear_norm
    );
}
