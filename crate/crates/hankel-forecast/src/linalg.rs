//! Thin wrappers pinning a single SVD backend and ordering convention for
//! the whole crate, so that every module sees identical factor semantics.

use nalgebra::DMatrix;

/// Thin SVD with singular values sorted in decreasing order.
pub(crate) struct Svd {
    /// Left factor, `rows x min(rows, cols)`.
    pub u: DMatrix<f64>,
    /// Singular values, decreasing.
    pub sigma: Vec<f64>,
    /// Transposed right factor, `min(rows, cols) x cols`.
    pub v_t: DMatrix<f64>,
}

pub(crate) fn svd(m: &DMatrix<f64>) -> Svd {
    let f = m.clone().svd(true, true);
    Svd {
        u: f.u.expect("svd requested u"),
        sigma: f.singular_values.as_slice().to_vec(),
        v_t: f.v_t.expect("svd requested v_t"),
    }
}

pub(crate) fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    m.clone().singular_values().as_slice().to_vec()
}

pub(crate) fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Best rank-`r` approximation by singular value truncation.
pub(crate) fn rank_r_approximation(m: &DMatrix<f64>, r: usize) -> DMatrix<f64> {
    let f = svd(m);
    let k = r.min(f.sigma.len());
    let mut out = DMatrix::zeros(m.nrows(), m.ncols());
    for i in 0..k {
        let ui = f.u.column(i);
        let vi = f.v_t.row(i);
        for b in 0..m.ncols() {
            for a in 0..m.nrows() {
                out[(a, b)] += f.sigma[i] * ui[a] * vi[b];
            }
        }
    }
    out
}

/// Minimum-norm least-squares solution of `a * x = rhs` via the
/// pseudoinverse, dropping singular values below `tol * sigma_max`.
pub(crate) fn min_norm_solution(a: &DMatrix<f64>, rhs: &[f64], tol: f64) -> Vec<f64> {
    let f = svd(a);
    let cutoff = f.sigma.first().copied().unwrap_or(0.0) * tol;
    let mut x = vec![0.0; a.ncols()];
    for i in 0..f.sigma.len() {
        if f.sigma[i] <= cutoff || f.sigma[i] == 0.0 {
            continue;
        }
        // coefficient = (u_i . rhs) / sigma_i, then x += coefficient * v_i
        let mut c = 0.0;
        for (row, r) in rhs.iter().enumerate() {
            c += f.u[(row, i)] * r;
        }
        c /= f.sigma[i];
        for (col, xv) in x.iter_mut().enumerate() {
            *xv += c * f.v_t[(i, col)];
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svd_reconstructs() {
        let m = DMatrix::from_row_slice(3, 4, &[1., 2., 3., 4., 5., 6., 7., 8., 9., 1., 2., 3.]);
        let f = svd(&m);
        let recon =
            &f.u * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(f.sigma.clone())) * &f.v_t;
        assert!((&m - recon).norm() < 1e-12);
        assert!(f.sigma.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn truncation_matches_frobenius_tail() {
        let m = DMatrix::from_row_slice(3, 3, &[4., 0., 0., 0., 3., 0., 0., 0., 1.]);
        let t = rank_r_approximation(&m, 2);
        assert!(((&m - t).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_norm_solves_underdetermined() {
        // single equation x + y = 2; min-norm solution (1, 1)
        let a = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let x = min_norm_solution(&a, &[2.0], 1e-10);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 1.0).abs() < 1e-12);
    }
}
