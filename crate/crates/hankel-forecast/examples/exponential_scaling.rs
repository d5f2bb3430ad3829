//! Exponential weighting as preprocessing: solving the plain problem on a
//! damped copy of the series under exponential weights, then undoing the
//! damping, is exactly equivalent to solving the damped-structure problem
//! directly — and it rescues forecasts of growing exponentials.
//!
//! ```bash
//! cargo run --release --example exponential_scaling
//! ```

use hankel_forecast::experiments::sqrt_mse;
use hankel_forecast::hankel::WeightVector;
use hankel_forecast::solver::{calibrate_tau, SolverConfig};
use hankel_forecast::weights::{solve_scaled_structure, solve_via_scaling};
use hankel_forecast::{HankelShape, TimeSeries};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let lambda: f64 = 1.05;
    let (n, m) = (40usize, 5usize);
    let full: Vec<f64> = (1..=(n + m) as i32)
        .map(|k| lambda.powi(k) + 0.02 * rng.gen_range(-1.0..1.0))
        .collect();
    let known = TimeSeries::new(full[..n].to_vec()).unwrap();
    let shape = HankelShape::forecasting(20, n, m).unwrap();
    let tau = calibrate_tau(&known, 20, 1, &WeightVector::ones(n)).unwrap();
    let config = SolverConfig::default();

    println!("series 1.05^k plus noise, n = {n}, m = {m}, budget {tau:.4}\n");
    println!("alpha | pipeline sqrt-MSE | direct sqrt-MSE | route gap");
    for alpha in [0.0, 0.1, 0.2, 0.3] {
        let pipeline = solve_via_scaling(&known, &shape, alpha, tau, &config).unwrap();
        let direct = solve_scaled_structure(&known, &shape, alpha, tau, &config).unwrap();
        let gap: f64 = pipeline
            .completed
            .iter()
            .zip(direct.completed.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        println!(
            "{alpha:5.2} | {:17.5} | {:15.5} | {gap:.2e}",
            sqrt_mse(&pipeline.completed[n..], &full[n..]),
            sqrt_mse(&direct.completed[n..], &full[n..]),
        );
    }
    println!("\ndamping below modulus one (alpha >= 0.1 here) repairs the forecast;");
    println!("the two routes agree to solver precision at every rate.");
}
