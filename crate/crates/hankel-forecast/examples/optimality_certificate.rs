//! Certifying global optimality of candidate completions: a decaying
//! exponential's recurrent continuation is certified unique (with the
//! certificate norm matching the closed-form bound), while a growing
//! exponential's is not certified.
//!
//! ```bash
//! cargo run --example optimality_certificate
//! ```

use hankel_forecast::theory::{c_rho, certificate_check, rank_one_certificate};
use hankel_forecast::{HankelShape, TimeSeries};

fn candidate(lambda: f64, len: usize) -> TimeSeries {
    TimeSeries::new((1..=len as i32).map(|k| lambda.powi(k)).collect()).unwrap()
}

fn main() {
    let shape = HankelShape::square_corner(7).unwrap();

    for lambda in [0.5, 0.9, 1.1, 1.5] {
        let report = certificate_check(&candidate(lambda, shape.total()), &shape, 1e-9).unwrap();
        println!(
            "lambda = {lambda:4.2}: verdict {:?}, certificate norm {:.6} \
             (closed-form bound {:.6}), residual {:.1e}",
            report.verdict,
            report.spectral_norm,
            c_rho(lambda, 7, 7, 6),
            report.constraint_residual
        );
    }

    println!("\nexplicit rank-one certificate on a 20 x 50 matrix:");
    for (lambda, missing) in [(0.7, 5usize), (1.0, 9), (1.3, 5)] {
        let total = 20 + 50 - 1;
        let shape = HankelShape::new(20, 50, total - missing, missing).unwrap();
        let cert = rank_one_certificate(1.0, lambda, &shape).unwrap();
        println!(
            "lambda = {lambda:4.2}, m = {missing}: |M| = {:.6}, C(rho) = {:.6}, \
             sigma_full = {:.4}, sigma_corner = {:.4}",
            cert.spectral_norm,
            c_rho(lambda, 20, 50, missing),
            cert.sigma_full,
            cert.sigma_corner
        );
    }
}
