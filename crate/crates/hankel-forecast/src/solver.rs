//! Convex completion core: weighted nuclear-norm minimization over series
//! with a missing bottom-right Hankel corner, in three modes.
//!
//! * `Exact` -- minimize `||S(p)||_*` with the known entries pinned,
//! * `Ball(tau)` -- minimize `||S(p)||_*` subject to
//!   `||p_(1:n) - p0||_W <= tau`,
//! * `Penalized(gamma)` -- minimize `||p_(1:n) - p0||_W + gamma ||S(p)||_*`.
//!
//! The algorithm is operator splitting (alternating directions) on the pair
//! `(X, p)` with the coupling `X = S(p)`:
//!
//! ```text
//! X   <- soft-threshold the singular values of S(p) - U
//! p   <- argmin of the multiplicity-weighted quadratic around the
//!        antidiagonal means of X + U, subject to the data constraint
//! U   <- U + X - S(p)
//! ```
//!
//! Every subproblem is closed-form up to a one-dimensional secular equation
//! for the ball (or weighted-norm proximal) multiplier, solved by
//! safeguarded Newton/bisection. A single solve is sequential and
//! deterministic; distinct solves share no state.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::finite_rank;
use crate::hankel::{self, HankelShape, WeightVector};
use crate::linalg;
use crate::series::TimeSeries;

/// Constraint mode of the completion problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Known entries pinned: `p_(1:n) = p0` exactly.
    Exact,
    /// Weighted ball around the observations: `||p_(1:n) - p0||_W <= tau`.
    Ball { tau: f64 },
    /// Penalized trade-off `||p_(1:n) - p0||_W + gamma ||S(p)||_*`.
    Penalized { gamma: f64 },
}

/// A fully specified completion problem.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub p0: TimeSeries,
    pub shape: HankelShape,
    pub weights: WeightVector,
    pub mode: Mode,
}

impl ProblemSpec {
    pub fn new(
        p0: TimeSeries,
        shape: HankelShape,
        weights: WeightVector,
        mode: Mode,
    ) -> Result<Self> {
        if p0.len() != shape.known() {
            return Err(Error::Shape(format!(
                "series length {} does not match shape's known count {}",
                p0.len(),
                shape.known()
            )));
        }
        if weights.len() != shape.known() {
            return Err(Error::Shape(format!(
                "weight length {} does not match known count {}",
                weights.len(),
                shape.known()
            )));
        }
        match mode {
            Mode::Ball { tau } if !(tau >= 0.0 && tau.is_finite()) => {
                return Err(Error::Precondition(format!(
                    "ball radius must be finite and >= 0, got {tau}"
                )));
            }
            Mode::Penalized { gamma } if !(gamma > 0.0 && gamma.is_finite()) => {
                return Err(Error::Precondition(format!(
                    "penalty must be finite and > 0, got {gamma}"
                )));
            }
            _ => {}
        }
        Ok(Self {
            p0,
            shape,
            weights,
            mode,
        })
    }
}

/// Iteration controls. Defaults suit desk-scale problems.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub max_iterations: usize,
    /// Initial splitting penalty.
    pub penalty: f64,
    /// Rebalance the penalty when primal and dual residuals drift apart.
    pub adaptive_penalty: bool,
    pub tol_abs: f64,
    pub tol_rel: f64,
    /// Relative tolerance of the one-dimensional multiplier search in the
    /// ball / weighted-norm proximal subproblem.
    pub multiplier_tol: f64,
    /// Warm-start the missing entries by a recurrence of this order.
    pub rank_hint: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 5000,
            penalty: 1.0,
            adaptive_penalty: true,
            tol_abs: 1e-8,
            tol_rel: 1e-6,
            multiplier_tol: 1e-12,
            rank_hint: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverStatus {
    Converged,
    IterationLimit,
    /// Reserved for internal-consistency failures; the feasible set of the
    /// supported modes is never empty.
    Infeasible,
}

/// A completed series together with solver diagnostics.
#[derive(Debug, Clone)]
pub struct SolverResult {
    /// The full series of length `n + m`.
    pub completed: TimeSeries,
    /// Singular values of the Hankel embedding of `completed`.
    pub singular_values: Vec<f64>,
    /// Their sum.
    pub nuclear_norm: f64,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub status: SolverStatus,
}

impl SolverResult {
    /// The forecast window, entries `n+1 ..= n+m`.
    pub fn forecast(&self, shape: &HankelShape) -> &[f64] {
        &self.completed[shape.known()..]
    }
}

/// Sum of the singular values of `x`.
pub fn nuclear_norm(x: &DMatrix<f64>) -> f64 {
    linalg::singular_values(x).iter().sum()
}

/// Solves the completion problem with the plain Hankel structure.
pub fn solve(problem: &ProblemSpec, config: &SolverConfig) -> Result<SolverResult> {
    solve_with_lag_scaling(problem, config, None)
}

/// Solves the completion problem where the structured matrix is the Hankel
/// embedding of the entrywise-scaled series, `S(p)[i, j] = s_{i+j-1} p_{i+j-1}`.
/// `lag_scale` must have length `n + m` with strictly positive entries;
/// `None` means all ones (the plain structure). The data constraint stays on
/// the unscaled variable `p`.
pub fn solve_with_lag_scaling(
    problem: &ProblemSpec,
    config: &SolverConfig,
    lag_scale: Option<&[f64]>,
) -> Result<SolverResult> {
    let shape = &problem.shape;
    let (n, m, total) = (shape.known(), shape.missing(), shape.total());
    let (rows, cols) = (shape.window(), shape.cols());

    if let Some(s) = lag_scale {
        if s.len() != total {
            return Err(Error::Shape(format!(
                "lag scale length {} does not match total length {total}",
                s.len()
            )));
        }
        if s.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidWeights(
                "lag scale entries must be strictly positive and finite".into(),
            ));
        }
    }
    let scale: Vec<f64> = match lag_scale {
        Some(s) => s.to_vec(),
        None => vec![1.0; total],
    };

    let w = problem.weights.as_slice();

    // Nothing to optimize when there is no freedom at all.
    let pinned = matches!(problem.mode, Mode::Exact | Mode::Ball { tau: 0.0 });
    if m == 0 && pinned {
        return finish(
            problem.p0.values().to_vec(),
            shape,
            0,
            0.0,
            0.0,
            SolverStatus::Converged,
        );
    }

    // The objective and constraints are positively homogeneous, so the
    // problem is solved on data normalized to unit magnitude and the
    // solution is scaled back; this keeps the absolute tolerances
    // meaningful for series of any scale.
    let magnitude = problem
        .p0
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let p0: Vec<f64> = problem.p0.iter().map(|v| v / magnitude).collect();
    let p0 = p0.as_slice();
    let mode = match problem.mode {
        Mode::Ball { tau } => Mode::Ball {
            tau: tau / magnitude,
        },
        other => other,
    };

    let mult: Vec<f64> = shape.multiplicities().iter().map(|c| *c as f64).collect();
    // effective quadratic coefficient of entry t in ||S(p) - Z||_F^2
    let chat: Vec<f64> = mult.iter().zip(&scale).map(|(c, s)| c * s * s).collect();

    // threshold of the singular value shrinkage step
    let theta = match mode {
        Mode::Penalized { gamma } => gamma,
        _ => 1.0,
    };

    let mut p = initial_point(p0, shape, config);
    let embed_scaled = |p: &[f64]| -> DMatrix<f64> {
        DMatrix::from_fn(rows, cols, |a, b| scale[a + b] * p[a + b])
    };

    let mut x = embed_scaled(&p);
    let mut u = DMatrix::<f64>::zeros(rows, cols);
    let mut rho = config.penalty;

    let sqrt_dim = ((rows * cols) as f64).sqrt();
    let mut primal = f64::INFINITY;
    let mut dual = f64::INFINITY;
    let mut status = SolverStatus::IterationLimit;
    let mut iterations = config.max_iterations;

    let mut zbar = vec![0.0; total];
    let mut b = vec![0.0; n];

    for iter in 1..=config.max_iterations {
        // X-update: singular value soft-thresholding of S(p) - U
        let target = embed_scaled(&p) - &u;
        let f = linalg::svd(&target);
        x.fill(0.0);
        for i in 0..f.sigma.len() {
            let s = f.sigma[i] - theta / rho;
            if s <= 0.0 {
                continue;
            }
            let ui = f.u.column(i);
            let vi = f.v_t.row(i);
            for bcol in 0..cols {
                let sv = s * vi[bcol];
                for arow in 0..rows {
                    x[(arow, bcol)] += ui[arow] * sv;
                }
            }
        }

        // antidiagonal means of Z = X + U, rescaled to the series variable
        let z = &x + &u;
        let sums = hankel::adjoint_sum(&z);
        for t in 0..total {
            zbar[t] = sums[t] / (mult[t] * scale[t]);
        }

        let p_prev = p.clone();

        // p-update: free entries take the mean, known entries obey the mode
        p[n..total].copy_from_slice(&zbar[n..total]);
        match mode {
            Mode::Exact => p[..n].copy_from_slice(p0),
            Mode::Ball { tau } => {
                if tau == 0.0 {
                    p[..n].copy_from_slice(p0);
                } else {
                    for t in 0..n {
                        b[t] = zbar[t] - p0[t];
                    }
                    let d = project_weighted_ball(&b, &chat[..n], w, tau, config.multiplier_tol);
                    for t in 0..n {
                        p[t] = p0[t] + d[t];
                    }
                }
            }
            Mode::Penalized { .. } => {
                for t in 0..n {
                    b[t] = zbar[t] - p0[t];
                }
                let d = prox_weighted_norm(&b, &chat[..n], w, rho, config.multiplier_tol);
                for t in 0..n {
                    p[t] = p0[t] + d[t];
                }
            }
        }

        let sp = embed_scaled(&p);
        let r_mat = &x - &sp;
        u += &r_mat;

        primal = r_mat.norm();
        dual = {
            let step: f64 = (0..total)
                .map(|t| {
                    let d = p[t] - p_prev[t];
                    chat[t] * d * d
                })
                .sum();
            rho * step.sqrt()
        };

        let eps_pri = sqrt_dim * config.tol_abs + config.tol_rel * x.norm().max(sp.norm());
        let eps_dual = sqrt_dim * config.tol_abs + config.tol_rel * rho * u.norm();

        if primal <= eps_pri && dual <= eps_dual {
            status = SolverStatus::Converged;
            iterations = iter;
            break;
        }

        if config.adaptive_penalty {
            if primal > 10.0 * dual && rho < 1e12 {
                rho *= 2.0;
                u /= 2.0;
            } else if dual > 10.0 * primal && rho > 1e-6 {
                rho /= 2.0;
                u *= 2.0;
            }
        }
    }

    for v in p.iter_mut() {
        *v *= magnitude;
    }
    // Pinned entries are copied verbatim so the equality constraint holds
    // bitwise regardless of floating-point detail above.
    if pinned {
        p[..n].copy_from_slice(problem.p0.values());
    }

    finish(
        p,
        shape,
        iterations,
        primal * magnitude,
        dual * magnitude,
        status,
    )
}

fn finish(
    p: Vec<f64>,
    shape: &HankelShape,
    iterations: usize,
    primal: f64,
    dual: f64,
    status: SolverStatus,
) -> Result<SolverResult> {
    let completed = TimeSeries::new(p)?;
    let singular_values =
        linalg::singular_values(&hankel::embed(completed.values(), shape.window())?);
    let nuclear: f64 = singular_values.iter().sum();
    Ok(SolverResult {
        completed,
        singular_values,
        nuclear_norm: nuclear,
        iterations,
        primal_residual: primal,
        dual_residual: dual,
        status,
    })
}

fn initial_point(p0: &[f64], shape: &HankelShape, config: &SolverConfig) -> Vec<f64> {
    let m = shape.missing();
    if m == 0 {
        return p0.to_vec();
    }
    if let Some(r) = config.rank_hint {
        if let Ok(series) = TimeSeries::new(p0.to_vec()) {
            if let Ok(ext) = finite_rank::lrf_extend(&series, r, m) {
                if ext.series.iter().all(|v| v.is_finite()) {
                    return ext.series.into_values();
                }
            }
        }
    }
    let mut p = p0.to_vec();
    let last = *p0.last().expect("known part is nonempty");
    p.resize(p0.len() + m, last);
    p
}

/// `d_t = chat_t b_t / (chat_t + mu w_t)` -- the stationary point of the
/// multiplicity-weighted quadratic under a multiplier `mu` on the weighted
/// ball constraint.
fn shrink(b: &[f64], chat: &[f64], w: &[f64], mu: f64, out: &mut [f64]) {
    for t in 0..b.len() {
        out[t] = chat[t] * b[t] / (chat[t] + mu * w[t]);
    }
}

fn weighted_sq_norm(d: &[f64], w: &[f64]) -> f64 {
    d.iter().zip(w).map(|(v, w)| w * v * v).sum()
}

/// Minimizes `sum_t chat_t (d_t - b_t)^2` subject to
/// `sum_t w_t d_t^2 <= tau^2` by a safeguarded Newton search for the
/// Lagrange multiplier of the ball.
fn project_weighted_ball(b: &[f64], chat: &[f64], w: &[f64], tau: f64, tol: f64) -> Vec<f64> {
    let n = b.len();
    let mut d = vec![0.0; n];
    if tau == 0.0 {
        return d;
    }
    let tau_sq = tau * tau;
    if weighted_sq_norm(b, w) <= tau_sq {
        d.copy_from_slice(b);
        return d;
    }

    // phi(mu) = ||d(mu)||_W^2 - tau^2 is convex and decreasing; Newton from
    // the left converges monotonically, bisection guards the bracket.
    let mut lo = 0.0f64;
    let mut hi = {
        // ||d(mu)||_W^2 <= (1/mu^2) sum chat^2 b^2 / w, so this mu makes phi <= 0
        let g: f64 = (0..n).map(|t| chat[t] * chat[t] * b[t] * b[t] / w[t]).sum();
        (g.sqrt() / tau).max(1e-300)
    };
    let mut mu = 0.0f64;
    for _ in 0..200 {
        shrink(b, chat, w, mu, &mut d);
        let norm_sq = weighted_sq_norm(&d, w);
        let phi = norm_sq - tau_sq;
        if phi.abs() <= tol * tau_sq || (hi - lo) <= tol * hi {
            break;
        }
        if phi > 0.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        let dphi: f64 = -2.0
            * (0..n)
                .map(|t| {
                    let denom = chat[t] + mu * w[t];
                    let dt = chat[t] * b[t] / denom;
                    w[t] * dt * dt * w[t] / denom
                })
                .sum::<f64>();
        let newton = mu - phi / dphi;
        mu = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    shrink(b, chat, w, mu, &mut d);
    d
}

/// Proximal step of the (unsquared) weighted norm in the multiplicity
/// metric: minimizes `||d||_W + (rho/2) sum_t chat_t (d_t - b_t)^2`.
fn prox_weighted_norm(b: &[f64], chat: &[f64], w: &[f64], rho: f64, tol: f64) -> Vec<f64> {
    let n = b.len();
    let mut d = vec![0.0; n];
    // zero is optimal when the data-fit pull is inside the dual unit ball
    let g_inf: f64 = (0..n)
        .map(|t| chat[t] * chat[t] * b[t] * b[t] / w[t])
        .sum::<f64>()
        .sqrt();
    if rho * g_inf <= 1.0 {
        return d;
    }
    // solve G(mu) = rho * mu * ||d(mu)||_W = 1; G is increasing in mu
    let eval = |mu: f64, d: &mut [f64]| -> f64 {
        shrink(b, chat, w, mu, d);
        rho * mu * weighted_sq_norm(d, w).sqrt()
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0 / (rho * weighted_sq_norm(b, w).sqrt().max(1e-300));
    while eval(hi, &mut d) < 1.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            break;
        }
    }
    let mut mu = 0.5 * (lo + hi);
    for _ in 0..200 {
        let g = eval(mu, &mut d);
        if (g - 1.0).abs() <= tol || (hi - lo) <= tol * hi {
            break;
        }
        if g < 1.0 {
            lo = mu;
        } else {
            hi = mu;
        }
        mu = 0.5 * (lo + hi);
    }
    shrink(b, chat, w, mu, &mut d);
    d
}

/// Approximation budget from the rank-`r` truncation of the embedding:
/// the weighted distance between `p0` and the diagonal-averaged best
/// rank-`r` approximation of its Hankel matrix (the separable-structure
/// approximation of the series).
pub fn calibrate_tau(
    p0: &TimeSeries,
    window: usize,
    r: usize,
    weights: &WeightVector,
) -> Result<f64> {
    let h = hankel::embed(p0.values(), window)?;
    let max_rank = h.nrows().min(h.ncols());
    if r < 1 || r > max_rank {
        return Err(Error::Precondition(format!(
            "rank {r} outside 1..={max_rank}"
        )));
    }
    let truncated = linalg::rank_r_approximation(&h, r);
    let p_check = hankel::diagonal_average(&truncated);
    hankel::weighted_distance(&p_check, p0.values(), weights)
}
