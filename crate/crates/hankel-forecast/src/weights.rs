//! The three observation-weighting schemes and the exponential-scaling
//! pipeline that turns an exponentially weighted problem into a plain
//! uniform-weight problem on a damped copy of the series.

use crate::error::{Error, Result};
use crate::hankel::{self, HankelShape, WeightVector};
use crate::series::TimeSeries;
use crate::solver::{self, Mode, ProblemSpec, SolverConfig, SolverResult};

/// A choice of weights for the data-fit norm.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// Antidiagonal multiplicities of the `L x (n-L+1)` embedding of the
    /// known part; makes the weighted vector norm equal the Frobenius norm
    /// of the embedded difference.
    Trapezoid,
    /// All ones.
    Uniform,
    /// `w_i = exp(alpha * i)`; positive `alpha` emphasizes recent
    /// observations.
    Exponential { alpha: f64 },
    /// Explicit strictly positive weights.
    Custom(Vec<f64>),
}

/// Builds the weight vector of length `n` for a window length `L`.
pub fn build_weights(spec: &WeightSpec, n: usize, window: usize) -> Result<WeightVector> {
    match spec {
        WeightSpec::Trapezoid => {
            if window < 1 || window > n {
                return Err(Error::Precondition(format!(
                    "trapezoid weights need 1 <= L <= n, got L={window}, n={n}"
                )));
            }
            let cols = n + 1 - window;
            let w = hankel::multiplicities(window, cols)
                .into_iter()
                .map(|c| c as f64)
                .collect();
            WeightVector::new(w)
        }
        WeightSpec::Uniform => Ok(WeightVector::ones(n)),
        WeightSpec::Exponential { alpha } => {
            if !alpha.is_finite() {
                return Err(Error::Precondition("alpha must be finite".into()));
            }
            let w: Vec<f64> = (1..=n).map(|i| (alpha * i as f64).exp()).collect();
            if w.iter().any(|v| !v.is_finite() || *v == 0.0) {
                return Err(Error::Overflow(format!(
                    "exp(alpha * i) leaves the double range for alpha = {alpha}, n = {n}"
                )));
            }
            WeightVector::new(w)
        }
        WeightSpec::Custom(w) => {
            if w.len() != n {
                return Err(Error::Shape(format!(
                    "custom weights have length {}, expected {n}",
                    w.len()
                )));
            }
            WeightVector::new(w.clone())
        }
    }
}

/// Multiplicities of the known entries inside the full `(n+m)`-length
/// matrix, as an explicit [`WeightSpec::Custom`]. An alternative to
/// [`WeightSpec::Trapezoid`], which by convention uses the length-`n`
/// embedding even when `m > 0`.
pub fn full_matrix_trapezoid(shape: &HankelShape) -> WeightSpec {
    let w = shape
        .multiplicities()
        .into_iter()
        .take(shape.known())
        .map(|c| c as f64)
        .collect();
    WeightSpec::Custom(w)
}

fn check_alpha(alpha: f64, len: usize) -> Result<()> {
    let extreme = (len as f64 * alpha.abs() / 2.0).exp();
    if !alpha.is_finite() || !extreme.is_finite() || extreme == 0.0 {
        return Err(Error::Overflow(format!(
            "exp(+-{len} * {alpha} / 2) leaves the double range"
        )));
    }
    Ok(())
}

/// Multiplies entry `k` (1-based) by `exp(-k alpha / 2)`, damping the
/// series so that growing exponentials become decaying ones.
pub fn scale_series(p: &TimeSeries, alpha: f64) -> Result<TimeSeries> {
    check_alpha(alpha, p.len())?;
    let scaled: Vec<f64> = p
        .iter()
        .enumerate()
        .map(|(i, v)| v * (-(i as f64 + 1.0) * alpha / 2.0).exp())
        .collect();
    if scaled.iter().any(|v| !v.is_finite()) {
        return Err(Error::Overflow(
            "scaled series left the double range".into(),
        ));
    }
    TimeSeries::new(scaled)
}

/// Inverse of [`scale_series`]: entry `k` multiplied by `exp(+k alpha / 2)`.
pub fn unscale_series(p_sc: &TimeSeries, alpha: f64) -> Result<TimeSeries> {
    scale_series(p_sc, -alpha)
}

/// Per-lag damping factors `exp(-k alpha / 2)` for `k = 1..=len`.
pub fn lag_scale(len: usize, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha, len)?;
    Ok((1..=len)
        .map(|k| (-(k as f64) * alpha / 2.0).exp())
        .collect())
}

/// Three-step pipeline for the scaled-structure problem with uniform
/// weights: damp the data, solve the plain-structure problem under
/// exponential weights `w_i = exp(alpha i)` with the same budget, then
/// undo the damping. Equivalent to minimizing the nuclear norm of the
/// Hankel matrix of the damped variable subject to
/// `||p_(1:n) - p0||_{W_2} <= tau`.
pub fn solve_via_scaling(
    p0: &TimeSeries,
    shape: &HankelShape,
    alpha: f64,
    tau: f64,
    config: &SolverConfig,
) -> Result<SolverResult> {
    check_alpha(alpha, shape.total())?;
    let n = shape.known();
    let scaled_p0 = scale_series(p0, alpha)?;
    let weights = build_weights(&WeightSpec::Exponential { alpha }, n, shape.window())?;
    let problem = ProblemSpec::new(scaled_p0, *shape, weights, Mode::Ball { tau })?;
    let inner = solver::solve(&problem, config)?;

    let completed = unscale_series(&inner.completed, alpha)?;
    let singular_values =
        crate::linalg::singular_values(&hankel::embed(completed.values(), shape.window())?);
    let nuclear_norm = singular_values.iter().sum();
    Ok(SolverResult {
        completed,
        singular_values,
        nuclear_norm,
        iterations: inner.iterations,
        primal_residual: inner.primal_residual,
        dual_residual: inner.dual_residual,
        status: inner.status,
    })
}

/// Direct solve of the scaled-structure problem: nuclear norm of the
/// Hankel embedding of the damped series, data constraint in uniform
/// weights on the raw variable. The other route to the same optimum as
/// [`solve_via_scaling`].
pub fn solve_scaled_structure(
    p0: &TimeSeries,
    shape: &HankelShape,
    alpha: f64,
    tau: f64,
    config: &SolverConfig,
) -> Result<SolverResult> {
    let scale = lag_scale(shape.total(), alpha)?;
    let problem = ProblemSpec::new(
        p0.clone(),
        *shape,
        WeightVector::ones(shape.known()),
        Mode::Ball { tau },
    )?;
    solver::solve_with_lag_scaling(&problem, config, Some(&scale))
}
