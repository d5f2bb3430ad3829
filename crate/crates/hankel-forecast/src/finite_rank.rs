//! Parametric finite-rank time-series models, their characteristic
//! polynomials and linear recurrent formulae, and the exact minimal-rank
//! continuation that serves as the ground-truth oracle for the convex
//! solver.
//!
//! A finite-rank series has the form `p_k = sum_j P_j(k) lambda_j^k` with
//! nonzero pairwise-distinct roots `lambda_j` and complex polynomials `P_j`
//! of degree `nu_j - 1`; its rank is `r = sum_j nu_j`, which equals the rank
//! of any Hankel embedding with both dimensions `>= r`. Complex arithmetic
//! stays inside this module: models flagged `real` are closed under
//! conjugation and evaluate to real series.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hankel::{self, HankelShape};
use crate::linalg;
use crate::series::TimeSeries;

/// Largest magnitude a single model term may reach during evaluation before
/// the operation aborts with an overflow error.
const OVERFLOW_LIMIT: f64 = 1e300;

/// Relative threshold below which imaginary residue of a real-flagged model
/// is discarded, and above which evaluation refuses to produce real output.
const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Relative threshold on the leading recurrence coefficient below which the
/// estimated recurrence is considered degenerate.
const LEADING_COEFF_TOL: f64 = 1e-10;

/// One root with its polynomial coefficient vector (low degree first;
/// `coeffs.len()` is the root multiplicity `nu`).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelTerm {
    pub root: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl ModelTerm {
    fn poly_at(&self, k: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * k + c;
        }
        acc
    }

    fn multiplicity(&self) -> usize {
        self.coeffs.len()
    }
}

/// A finite-rank model `p_k = sum_j P_j(k) lambda_j^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialModel {
    terms: Vec<ModelTerm>,
    real: bool,
}

/// A component of the real parametric form: either a polynomially modulated
/// damped cosine or a polynomially modulated real exponential.
#[derive(Debug, Clone, PartialEq)]
pub enum RealComponent {
    /// `Q(k) * modulus^k * cos(2 pi frequency k + phase)` with
    /// `frequency in (0, 1/2)` and real polynomial coefficients `poly`
    /// (low degree first).
    Cosine {
        modulus: f64,
        frequency: f64,
        phase: f64,
        poly: Vec<f64>,
    },
    /// `Q(k) * modulus^k` with real polynomial coefficients `poly`.
    Exponential { modulus: f64, poly: Vec<f64> },
}

impl ExponentialModel {
    /// Builds a complex model from `(root, coefficients)` pairs.
    pub fn new(terms: Vec<ModelTerm>) -> Result<Self> {
        Self::build(terms, false)
    }

    /// Builds a model asserted to be closed under conjugation, so that
    /// evaluations are real.
    pub fn new_real(terms: Vec<ModelTerm>) -> Result<Self> {
        Self::build(terms, true)
    }

    fn build(terms: Vec<ModelTerm>, real: bool) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidModel("model has no terms".into()));
        }
        for t in &terms {
            if t.root.norm() == 0.0 || !t.root.re.is_finite() || !t.root.im.is_finite() {
                return Err(Error::InvalidModel(
                    "roots must be nonzero and finite".into(),
                ));
            }
            if t.coeffs.is_empty() {
                return Err(Error::InvalidModel("empty coefficient vector".into()));
            }
            let lead = t.coeffs.last().unwrap();
            if lead.norm() == 0.0 {
                return Err(Error::InvalidModel(
                    "leading polynomial coefficient must be nonzero".into(),
                ));
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let a = terms[i].root;
                let b = terms[j].root;
                if (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0) {
                    return Err(Error::InvalidModel(format!(
                        "duplicate roots {a} and {b}; carry multiplicity in the polynomial degree"
                    )));
                }
            }
        }
        Ok(Self { terms, real })
    }

    /// Converts trend/periodic components of the real parametric form into
    /// the complex root representation: each cosine becomes a conjugate pair
    /// of roots `modulus * exp(+-i 2 pi frequency)` with coefficients
    /// `exp(+-i phase) / 2 * Q`, each exponential a single real root.
    pub fn from_real_form(components: &[RealComponent]) -> Result<Self> {
        let mut terms = Vec::new();
        for c in components {
            match c {
                RealComponent::Cosine {
                    modulus,
                    frequency,
                    phase,
                    poly,
                } => {
                    if !(*frequency > 0.0 && *frequency < 0.5) {
                        return Err(Error::InvalidModel(format!(
                            "cosine frequency must lie in (0, 1/2), got {frequency}"
                        )));
                    }
                    let angle = 2.0 * std::f64::consts::PI * frequency;
                    let rot = Complex64::from_polar(1.0, *phase) * 0.5;
                    terms.push(ModelTerm {
                        root: Complex64::from_polar(*modulus, angle),
                        coeffs: poly.iter().map(|q| rot * q).collect(),
                    });
                    terms.push(ModelTerm {
                        root: Complex64::from_polar(*modulus, -angle),
                        coeffs: poly.iter().map(|q| rot.conj() * q).collect(),
                    });
                }
                RealComponent::Exponential { modulus, poly } => {
                    terms.push(ModelTerm {
                        root: Complex64::new(*modulus, 0.0),
                        coeffs: poly.iter().map(|q| Complex64::new(*q, 0.0)).collect(),
                    });
                }
            }
        }
        Self::build(terms, true)
    }

    /// The finite difference dimension `r = sum_j nu_j`; equals the rank of
    /// any Hankel embedding of the series with `L, K >= r`.
    pub fn rank(&self) -> usize {
        self.terms.iter().map(ModelTerm::multiplicity).sum()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn terms(&self) -> &[ModelTerm] {
        &self.terms
    }

    /// Complex evaluation of `p_k` for `k = first, ..., first + count - 1`.
    pub fn evaluate_complex(&self, first: usize, count: usize) -> Result<Vec<Complex64>> {
        if first < 1 || count == 0 {
            return Err(Error::Precondition(
                "evaluation range must start at k >= 1 and be nonempty".into(),
            ));
        }
        let mut out = Vec::with_capacity(count);
        for k in first..first + count {
            let mut v = Complex64::new(0.0, 0.0);
            for t in &self.terms {
                let term = t.poly_at(k as f64) * t.root.powf(k as f64);
                if !term.re.is_finite() || !term.im.is_finite() || term.norm() > OVERFLOW_LIMIT {
                    return Err(Error::Overflow(format!(
                        "model term with root {} exceeds {OVERFLOW_LIMIT:e} at k = {k}",
                        t.root
                    )));
                }
                v += term;
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Real evaluation: `p_k = sum_j P_j(k) lambda_j^k` over the 1-based
    /// range `k = first, ..., first + count - 1`. Errors when the imaginary
    /// residue exceeds `1e-10` relative to the magnitude of the series.
    pub fn evaluate(&self, first: usize, count: usize) -> Result<TimeSeries> {
        let complex = self.evaluate_complex(first, count)?;
        let scale = complex
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max)
            .max(1e-30);
        let mut values = Vec::with_capacity(complex.len());
        for v in &complex {
            if v.im.abs() > IMAG_RESIDUE_TOL * scale {
                return Err(Error::InvalidModel(format!(
                    "imaginary residue {:e} exceeds {:e} of scale {:e}; model is not real",
                    v.im, IMAG_RESIDUE_TOL, scale
                )));
            }
            values.push(v.re);
        }
        TimeSeries::new(values)
    }

    /// Monic characteristic polynomial `prod_j (z - lambda_j)^{nu_j}`.
    pub fn char_poly(&self) -> CharPoly {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for t in &self.terms {
            for _ in 0..t.multiplicity() {
                // multiply by (z - root)
                let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * t.root;
                }
                coeffs = next;
            }
        }
        // drop the leading 1, keep q_0 .. q_{r-1}
        coeffs.pop();
        CharPoly { coeffs }
    }
}

/// Coefficients `q_0 .. q_{r-1}` of the monic characteristic polynomial
/// `z^r + q_{r-1} z^{r-1} + ... + q_0` driving the minimal linear
/// recurrence `p_{k+r} = -sum_j q_j p_{k+j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<Complex64>,
}

impl CharPoly {
    pub fn from_real(coeffs: Vec<f64>) -> Self {
        Self {
            coeffs: coeffs.into_iter().map(|c| Complex64::new(c, 0.0)).collect(),
        }
    }

    /// The recurrence order `r`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Real coefficient vector; errors if any imaginary part survives.
    pub fn real_coeffs(&self) -> Result<Vec<f64>> {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        self.coeffs
            .iter()
            .map(|c| {
                if c.im.abs() > IMAG_RESIDUE_TOL * scale {
                    Err(Error::InvalidModel(format!(
                        "characteristic coefficient {c} is not real"
                    )))
                } else {
                    Ok(c.re)
                }
            })
            .collect()
    }

    /// Largest residual of the recurrence `p_{k+r} + sum_j q_j p_{k+j}`
    /// over all windows of `values`, relative to the series magnitude.
    pub fn recursion_residual(&self, values: &[f64]) -> f64 {
        let r = self.order();
        if values.len() < r + 1 {
            return 0.0;
        }
        let scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1e-30);
        let mut worst = 0.0f64;
        for k in 0..values.len() - r {
            let mut acc = Complex64::new(values[k + r], 0.0);
            for (j, q) in self.coeffs.iter().enumerate() {
                acc += q * values[k + j];
            }
            worst = worst.max(acc.norm() / scale);
        }
        worst
    }
}

/// Result of a data-driven recurrence fit and extension.
#[derive(Debug, Clone)]
pub struct LrfExtension {
    /// The input followed by `m` recurrent continuations.
    pub series: TimeSeries,
    /// Estimated recurrence coefficients `q_0 .. q_{r-1}` (last singular
    /// vector of the `(r+1)`-row Hankel embedding, normalized to trailing 1).
    pub coefficients: Vec<f64>,
    /// Set when the `(r+1)`-row embedding had numerical rank `< r`, i.e.
    /// fewer than `r` active recurrence steps in the data.
    pub rank_deficient: bool,
}

/// Estimates an order-`r` linear recurrence from `p0` and appends `m`
/// continuation values `p_{k+r} = -sum_j q_j p_{k+j}`.
///
/// The coefficient vector is the left singular vector of the `(r+1) x (n-r)`
/// Hankel embedding of `p0` for its smallest singular value, normalized so
/// its trailing entry is 1. On exact finite-rank data this reproduces the
/// minimal recurrence exactly; on noisy data it is a best-effort estimate.
pub fn lrf_extend(p0: &TimeSeries, r: usize, m: usize) -> Result<LrfExtension> {
    let n = p0.len();
    if r < 1 {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    if n < 2 * r {
        return Err(Error::Precondition(format!(
            "need n >= 2r observations to fit an order-{r} recurrence, got n = {n}"
        )));
    }
    let h = hankel::embed(p0.values(), r + 1)?;
    let f = linalg::svd(&h);
    let u_min = f.u.column(f.sigma.len() - 1);

    let coeff_norm = u_min.norm();
    let lead = u_min[r];
    if lead.abs() < LEADING_COEFF_TOL * coeff_norm {
        return Err(Error::DegenerateRecurrence(format!(
            "leading coefficient {:e} below {:e} of the coefficient norm; \
             the data support fewer than {r} recurrence steps",
            lead.abs(),
            LEADING_COEFF_TOL * coeff_norm
        )));
    }
    let coefficients: Vec<f64> = (0..r).map(|j| u_min[j] / lead).collect();

    // numerical rank of the (r+1)-row embedding; < r means deficient data
    let top = f.sigma[0];
    let numerical_rank = f.sigma.iter().filter(|s| **s > 1e-10 * top).count();
    let rank_deficient = numerical_rank < r;

    let mut values = p0.values().to_vec();
    for _ in 0..m {
        let base = values.len() - r;
        let mut next = 0.0;
        for (j, q) in coefficients.iter().enumerate() {
            next -= q * values[base + j];
        }
        if !next.is_finite() {
            return Err(Error::Overflow(
                "recurrent continuation left the double range".into(),
            ));
        }
        values.push(next);
    }

    Ok(LrfExtension {
        series: TimeSeries::new(values)?,
        coefficients,
        rank_deficient,
    })
}

/// Exact minimal-rank completion: the unique rank-`r` continuation of `p0`
/// obtained by the minimal linear recurrence, valid when
/// `r <= min(L, K, n/2)`.
pub fn minimal_rank_completion(
    p0: &TimeSeries,
    shape: &HankelShape,
    r: usize,
) -> Result<TimeSeries> {
    if p0.len() != shape.known() {
        return Err(Error::Shape(format!(
            "series length {} does not match shape's known count {}",
            p0.len(),
            shape.known()
        )));
    }
    let cap = shape.window().min(shape.cols()).min(shape.known() / 2);
    if r > cap {
        return Err(Error::Precondition(format!(
            "rank {r} exceeds min(L, K, n/2) = {cap}"
        )));
    }
    if shape.missing() == 0 {
        return Ok(p0.clone());
    }
    Ok(lrf_extend(p0, r, shape.missing())?.series)
}

/// Number of singular values of the `L`-windowed embedding of `p0`
/// exceeding `tol` times the largest one.
pub fn estimate_rank(values: &[f64], window: usize, tol: f64) -> Result<usize> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Precondition(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    let sigma = linalg::singular_values(&hankel::embed(values, window)?);
    let top = sigma.first().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(0);
    }
    Ok(sigma.iter().filter(|s| **s > tol * top).count())
}
