//! The two regimes of nuclear-norm completion on the square corner
//! pattern: a decaying exponential is recovered exactly, while a growing
//! one is forecast as its reflected (decaying) continuation — the
//! characteristic failure mode the weighting schemes exist to fix.
//!
//! ```bash
//! cargo run --example nuclear_norm_forecast
//! ```

use hankel_forecast::hankel::WeightVector;
use hankel_forecast::solver::{solve, Mode, ProblemSpec, SolverConfig};
use hankel_forecast::{HankelShape, TimeSeries};

fn run(lambda: f64) {
    let n = 13;
    let shape = HankelShape::square_corner(n).unwrap();
    let p0 = TimeSeries::new((1..=n as i32).map(|k| lambda.powi(k)).collect()).unwrap();
    let problem = ProblemSpec::new(p0, shape, WeightVector::ones(n), Mode::Exact).unwrap();
    let result = solve(&problem, &SolverConfig::default()).unwrap();

    println!(
        "\nlambda = {lambda}: {:?} in {} iterations",
        result.status, result.iterations
    );
    println!("  k | completed     | lambda^k      | lambda^n / lambda^(k-n)");
    for k in n..n + 4 {
        let grow = lambda.powi(k as i32 + 1);
        let reflect = lambda.powi(n as i32) / lambda.powi(k as i32 + 1 - n as i32);
        println!(
            "{:3} | {:13.6} | {:13.6} | {:13.6}",
            k + 1,
            result.completed[k],
            grow,
            reflect
        );
    }
}

fn main() {
    // |lambda| < 1: the relaxation recovers the true continuation
    run(0.8);
    // |lambda| > 1: the minimizer reflects the modulus instead of growing
    run(1.25);
}
