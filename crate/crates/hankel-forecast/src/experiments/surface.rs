//! Forecast error surface over the exponential-weighting rate and the
//! approximation budget, with its minimizing cell.

use rayon::prelude::*;

use super::datasets::sqrt_mse;
use crate::error::Result;
use crate::hankel::HankelShape;
use crate::series::TimeSeries;
use crate::solver::{self, Mode, ProblemSpec, SolverConfig};
use crate::weights::{self, WeightSpec};

#[derive(Debug, Clone)]
pub struct SurfaceConfig {
    pub alphas: Vec<f64>,
    pub taus: Vec<f64>,
    pub window: usize,
    pub solver: SolverConfig,
}

impl SurfaceConfig {
    /// Default grid: rates 0.00 to 0.10 in steps of 0.01, budgets 1000 to
    /// 12000 in steps of 1000.
    pub fn standard(window: usize) -> Self {
        Self {
            alphas: (0..=10).map(|i| i as f64 / 100.0).collect(),
            taus: (1..=12).map(|i| i as f64 * 1000.0).collect(),
            window,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SurfaceCell {
    pub alpha: f64,
    pub tau: f64,
    pub sqrt_mse: f64,
    pub log_sqrt_mse: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Surface {
    pub cells: Vec<SurfaceCell>,
    pub argmin: SurfaceCell,
}

/// Solves the exponentially weighted ball problem for every grid cell and
/// scores the forecast window against the holdout.
pub fn alpha_tau_surface(
    known: &TimeSeries,
    holdout: &[f64],
    config: &SurfaceConfig,
) -> Result<Surface> {
    let n = known.len();
    let m = holdout.len();
    let shape = HankelShape::forecasting(config.window, n, m)?;

    let grid: Vec<(f64, f64)> = config
        .alphas
        .iter()
        .flat_map(|a| config.taus.iter().map(move |t| (*a, *t)))
        .collect();

    let cells: Vec<SurfaceCell> = grid
        .par_iter()
        .map(|&(alpha, tau)| -> Result<SurfaceCell> {
            let w = weights::build_weights(&WeightSpec::Exponential { alpha }, n, config.window)?;
            let problem = ProblemSpec::new(known.clone(), shape, w, Mode::Ball { tau })?;
            let result = solver::solve(&problem, &config.solver)?;
            let err = sqrt_mse(&result.completed[n..], holdout);
            Ok(SurfaceCell {
                alpha,
                tau,
                sqrt_mse: err,
                log_sqrt_mse: err.ln(),
            })
        })
        .collect::<Result<_>>()?;

    let argmin = cells
        .iter()
        .min_by(|a, b| a.sqrt_mse.total_cmp(&b.sqrt_mse))
        .expect("grid is nonempty")
        .clone();

    Ok(Surface { cells, argmin })
}
