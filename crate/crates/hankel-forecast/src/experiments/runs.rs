//! Single forecast / approximation / calibration runs shared by the CLI
//! and the examples.

use super::datasets::sqrt_mse;
use crate::error::Result;
use crate::hankel::HankelShape;
use crate::series::TimeSeries;
use crate::solver::{self, Mode, ProblemSpec, SolverConfig, SolverResult, SolverStatus};
use crate::theory;
use crate::weights::{self, WeightSpec};

/// How the approximation budget is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum BudgetSpec {
    /// Explicit radius.
    Tau(f64),
    /// Weighted distance to the rank-`r` truncation of the embedding.
    CalibrateRank(usize),
    /// Pin the known entries (`tau = 0`).
    Exact,
}

/// A fully described forecasting (or, with `missing = 0`, approximation)
/// run.
#[derive(Debug, Clone)]
pub struct ForecastRequest {
    /// Window length; `None` picks the near-square optimum.
    pub window: Option<usize>,
    pub missing: usize,
    pub weights: WeightSpec,
    pub budget: BudgetSpec,
    pub solver: SolverConfig,
}

#[derive(Debug, Clone)]
pub struct ForecastOutcome {
    pub shape: HankelShape,
    pub tau: f64,
    pub result: SolverResult,
    /// Root mean squared forecast error against the held-out truth, when
    /// provided.
    pub sqrt_mse: Option<f64>,
}

impl ForecastOutcome {
    pub fn forecast(&self) -> &[f64] {
        &self.result.completed[self.shape.known()..]
    }

    pub fn status(&self) -> SolverStatus {
        self.result.status
    }
}

/// Runs one completion problem end to end: shape construction, weight
/// assembly, budget calibration, solve, and optional holdout scoring.
pub fn run_forecast(
    known: &TimeSeries,
    holdout: Option<&[f64]>,
    request: &ForecastRequest,
) -> Result<ForecastOutcome> {
    let n = known.len();
    let m = request.missing;
    let window = request
        .window
        .unwrap_or_else(|| theory::optimal_window(n + m, m));
    let shape = if m == 0 {
        HankelShape::new(window, n + 1 - window, n, 0)?
    } else {
        HankelShape::forecasting(window, n, m)?
    };
    let weight_vector = weights::build_weights(&request.weights, n, window)?;
    let tau = match &request.budget {
        BudgetSpec::Tau(tau) => *tau,
        BudgetSpec::CalibrateRank(r) => solver::calibrate_tau(known, window, *r, &weight_vector)?,
        BudgetSpec::Exact => 0.0,
    };
    let mode = if matches!(request.budget, BudgetSpec::Exact) {
        Mode::Exact
    } else {
        Mode::Ball { tau }
    };
    let problem = ProblemSpec::new(known.clone(), shape, weight_vector, mode)?;
    let result = solver::solve(&problem, &request.solver)?;
    let sqrt_mse = holdout.map(|truth| sqrt_mse(&result.completed[n..], truth));
    Ok(ForecastOutcome {
        shape,
        tau,
        result,
        sqrt_mse,
    })
}

/// One calibrated budget.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CalibrationRow {
    pub scheme: String,
    pub rank: usize,
    pub tau: f64,
}

/// Budgets for every (weight scheme, rank) pair.
pub fn run_calibration(
    series: &TimeSeries,
    window: usize,
    schemes: &[(String, WeightSpec)],
    ranks: &[usize],
) -> Result<Vec<CalibrationRow>> {
    let mut rows = Vec::new();
    for (name, spec) in schemes {
        let w = weights::build_weights(spec, series.len(), window)?;
        for &rank in ranks {
            let tau = solver::calibrate_tau(series, window, rank, &w)?;
            rows.push(CalibrationRow {
                scheme: name.clone(),
                rank,
                tau,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_series_forecasts_the_constant() {
        // rank-1 with unit root: pinning reproduces the constant forward
        let known = TimeSeries::new(vec![4.2; 20]).unwrap();
        let request = ForecastRequest {
            window: Some(9),
            missing: 4,
            weights: WeightSpec::Uniform,
            budget: BudgetSpec::Tau(0.0),
            solver: SolverConfig::default(),
        };
        let outcome = run_forecast(&known, None, &request).unwrap();
        for v in outcome.forecast() {
            assert!((v - 4.2).abs() <= 1e-4, "forecast {v}");
        }
    }

    #[test]
    fn approximation_mode_keeps_length() {
        let values: Vec<f64> = (1..=24).map(|k| (k as f64 * 0.6).sin()).collect();
        let known = TimeSeries::new(values).unwrap();
        let request = ForecastRequest {
            window: Some(10),
            missing: 0,
            weights: WeightSpec::Trapezoid,
            budget: BudgetSpec::CalibrateRank(2),
            solver: SolverConfig::default(),
        };
        let outcome = run_forecast(&known, None, &request).unwrap();
        assert_eq!(outcome.result.completed.len(), 24);
        assert!(outcome.sqrt_mse.is_none());
    }

    #[test]
    fn holdout_scoring_reports_sqrt_mse() {
        let full: Vec<f64> = (1..=30).map(|k| 0.9f64.powi(k)).collect();
        let known = TimeSeries::new(full[..27].to_vec()).unwrap();
        let request = ForecastRequest {
            window: None,
            missing: 3,
            weights: WeightSpec::Uniform,
            budget: BudgetSpec::Exact,
            solver: SolverConfig::default(),
        };
        let outcome = run_forecast(&known, Some(&full[27..]), &request).unwrap();
        let err = outcome.sqrt_mse.unwrap();
        assert!(err <= 1e-4, "sqrt mse {err}");
        // auto window is near-square
        assert_eq!(outcome.shape.window(), 16);
    }

    #[test]
    fn calibration_table_covers_all_pairs() {
        let values: Vec<f64> = (1..=30)
            .map(|k| (k as f64 * 0.4).sin() + 0.01 * k as f64)
            .collect();
        let series = TimeSeries::new(values).unwrap();
        let schemes = vec![
            ("trapezoid".to_string(), WeightSpec::Trapezoid),
            ("uniform".to_string(), WeightSpec::Uniform),
            ("exp".to_string(), WeightSpec::Exponential { alpha: 0.05 }),
        ];
        let rows = run_calibration(&series, 10, &schemes, &[1, 3, 10]).unwrap();
        assert_eq!(rows.len(), 9);
        // budgets shrink as the rank grows, for every scheme
        for chunk in rows.chunks(3) {
            assert!(chunk[0].tau >= chunk[1].tau && chunk[1].tau >= chunk[2].tau);
        }
    }
}
