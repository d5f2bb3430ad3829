//! Cross-module invariants that pair the solver with the certificate
//! machinery and the exact oracle.

use hankel_forecast::finite_rank;
use hankel_forecast::hankel::WeightVector;
use hankel_forecast::solver::{self, Mode, ProblemSpec, SolverConfig, SolverStatus};
use hankel_forecast::theory::{self, CertificateVerdict};
use hankel_forecast::{HankelShape, TimeSeries};

fn geometric(lambda: f64, len: usize) -> TimeSeries {
    TimeSeries::new((1..=len as i32).map(|k| lambda.powi(k)).collect()).unwrap()
}

#[test]
fn converged_exact_solves_are_certified() {
    // pinned solves on exact decaying data: the certificate must confirm
    // the solver's answer, and the answer must match the recurrence oracle
    let config = SolverConfig {
        max_iterations: 200_000,
        tol_abs: 1e-11,
        tol_rel: 1e-9,
        ..Default::default()
    };
    for (lambda, n) in [(0.5f64, 7usize), (0.75, 10), (0.9, 13)] {
        let shape = HankelShape::square_corner(n).unwrap();
        let p0 = geometric(lambda, n);
        let problem =
            ProblemSpec::new(p0.clone(), shape, WeightVector::ones(n), Mode::Exact).unwrap();
        let result = solver::solve(&problem, &config).unwrap();
        assert_eq!(result.status, SolverStatus::Converged);

        let report = theory::certificate_check(&result.completed, &shape, 1e-6).unwrap();
        assert_eq!(
            report.verdict,
            CertificateVerdict::CertifiedUnique,
            "lambda={lambda}, n={n}: {report:?}"
        );

        let oracle = finite_rank::minimal_rank_completion(&p0, &shape, 1).unwrap();
        for (a, b) in result.completed.iter().zip(oracle.iter()) {
            assert!(
                (a - b).abs() <= 1e-6 * b.abs().max(1e-9),
                "lambda={lambda}: solver {a} vs oracle {b}"
            );
        }
    }
}

#[test]
fn certificate_agrees_with_probe_on_both_regimes() {
    // the probe's success/failure verdicts and the certificate's
    // certified/uncertified verdicts tell the same story
    let shape = HankelShape::square_corner(9).unwrap();
    let config = SolverConfig::default();

    let decaying = geometric(0.6, shape.total());
    let probe = theory::success_probe(&decaying, &shape, &config).unwrap();
    let cert = theory::certificate_check(&decaying, &shape, 1e-9).unwrap();
    assert!(probe.is_success());
    assert_eq!(cert.verdict, CertificateVerdict::CertifiedUnique);

    let growing = geometric(1.6, shape.total());
    let probe = theory::success_probe(&growing, &shape, &config).unwrap();
    let cert = theory::certificate_check(&growing, &shape, 1e-9).unwrap();
    assert!(!probe.is_success());
    assert_ne!(cert.verdict, CertificateVerdict::CertifiedUnique);
}
