//! Hankel-matrix algebra: embedding a series into its Hankel matrix, the
//! adjoint of the embedding, diagonal averaging (the orthogonal projection
//! back onto Hankel structure), antidiagonal multiplicities and weighted
//! vector norms.
//!
//! All operations are pure functions over immutable values. Series indices
//! are 1-based in documentation and error messages; storage is 0-based.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// The shape of a Hankel completion problem: an `L x K` matrix built from a
/// series of `n` known and `m` missing values, with `L + K - 1 = n + m`.
/// The missing values occupy the bottom-right corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HankelShape {
    window: usize,
    cols: usize,
    known: usize,
    missing: usize,
}

impl HankelShape {
    /// General constructor; only enforces structural consistency
    /// (`L + K - 1 = n + m`, all dimensions positive, `m >= 0`).
    pub fn new(window: usize, cols: usize, known: usize, missing: usize) -> Result<Self> {
        if window < 1 || cols < 1 {
            return Err(Error::Shape(format!(
                "window and column counts must be >= 1, got L={window}, K={cols}"
            )));
        }
        if known < 1 {
            return Err(Error::Shape("need at least one known value".into()));
        }
        if window + cols - 1 != known + missing {
            return Err(Error::Shape(format!(
                "L + K - 1 = {} but n + m = {}",
                window + cols - 1,
                known + missing
            )));
        }
        Ok(Self {
            window,
            cols,
            known,
            missing,
        })
    }

    /// Constructor for forecasting problems: derives `K = n + m - L + 1` and
    /// additionally requires `m < min(L, K)` so the missing corner touches
    /// neither the first row nor the first column.
    pub fn forecasting(window: usize, known: usize, missing: usize) -> Result<Self> {
        let total = known + missing;
        if window > total {
            return Err(Error::Shape(format!(
                "window {window} exceeds total length {total}"
            )));
        }
        let cols = total + 1 - window;
        let shape = Self::new(window, cols, known, missing)?;
        if missing >= shape.window.min(shape.cols) {
            return Err(Error::Shape(format!(
                "forecasting requires m < min(L, K): m={}, L={}, K={}",
                missing, shape.window, shape.cols
            )));
        }
        Ok(shape)
    }

    /// The square corner pattern: an `n x n` matrix with everything below
    /// the main antidiagonal missing, i.e. `L = K = n` and `m = n - 1`.
    pub fn square_corner(known: usize) -> Result<Self> {
        if known < 1 {
            return Err(Error::Shape("need at least one known value".into()));
        }
        Self::new(known, known, known, known - 1)
    }

    /// Window length `L` (rows).
    pub fn window(&self) -> usize {
        self.window
    }

    /// Number of columns `K`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of known entries `n`.
    pub fn known(&self) -> usize {
        self.known
    }

    /// Number of missing (forecast) entries `m`.
    pub fn missing(&self) -> usize {
        self.missing
    }

    /// Total series length `n + m`.
    pub fn total(&self) -> usize {
        self.known + self.missing
    }

    /// Antidiagonal multiplicity of the 1-based series index `i`.
    pub fn multiplicity(&self, i: usize) -> Result<usize> {
        multiplicity(i, self.window, self.cols)
    }

    /// All multiplicities, index 1 through `n + m`.
    pub fn multiplicities(&self) -> Vec<usize> {
        multiplicities(self.window, self.cols)
    }
}

/// Number of positions `(a, b)` with `a + b - 1 = i` in an `L x K` matrix,
/// i.e. `min(i, L, K, L + K - i)`.
pub fn multiplicity(i: usize, window: usize, cols: usize) -> Result<usize> {
    let len = window + cols - 1;
    if i < 1 || i > len {
        return Err(Error::IndexOutOfRange { index: i, len });
    }
    Ok(i.min(window).min(cols).min(len + 1 - i))
}

/// Multiplicities for every antidiagonal of an `L x K` matrix.
pub fn multiplicities(window: usize, cols: usize) -> Vec<usize> {
    (1..=window + cols - 1)
        .map(|i| i.min(window).min(cols).min(window + cols - i))
        .collect()
}

/// Embeds a series of length `L + K - 1` into its `L x K` Hankel matrix,
/// `H[i, j] = p[i + j - 1]` in 1-based indexing.
pub fn embed(values: &[f64], window: usize) -> Result<DMatrix<f64>> {
    if window < 1 {
        return Err(Error::Shape("window must be >= 1".into()));
    }
    if values.len() < window {
        return Err(Error::Shape(format!(
            "series of length {} is shorter than window {}",
            values.len(),
            window
        )));
    }
    let cols = values.len() + 1 - window;
    Ok(DMatrix::from_fn(window, cols, |a, b| values[a + b]))
}

/// Adjoint of [`embed`]: entry `i` is the sum of `X` over the antidiagonal
/// `{(a, b): a + b - 1 = i}`. Satisfies `<embed(p), X>_F = <p, adjoint_sum(X)>`.
pub fn adjoint_sum(x: &DMatrix<f64>) -> Vec<f64> {
    let (rows, cols) = (x.nrows(), x.ncols());
    let mut out = vec![0.0; rows + cols - 1];
    for b in 0..cols {
        for a in 0..rows {
            out[a + b] += x[(a, b)];
        }
    }
    out
}

/// Antidiagonal means of `X`: the series whose Hankel embedding is the
/// orthogonal projection of `X` onto the Hankel subspace.
pub fn diagonal_average(x: &DMatrix<f64>) -> Vec<f64> {
    let mult = multiplicities(x.nrows(), x.ncols());
    adjoint_sum(x)
        .into_iter()
        .zip(mult)
        .map(|(s, c)| s / c as f64)
        .collect()
}

/// A strictly positive weight vector defining the norm
/// `||x||_W = sqrt(sum_i w_i x_i^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("weight vector is empty".into()));
        }
        if let Some(pos) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidWeights(format!(
                "weight {} at entry {} is not strictly positive and finite",
                weights[pos],
                pos + 1
            )));
        }
        Ok(Self(weights))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Weighted Euclidean norm `sqrt(sum_i w_i x_i^2)`.
pub fn weighted_norm(x: &[f64], weights: &WeightVector) -> Result<f64> {
    if x.len() != weights.len() {
        return Err(Error::Shape(format!(
            "vector length {} does not match weight length {}",
            x.len(),
            weights.len()
        )));
    }
    Ok(x.iter()
        .zip(weights.as_slice())
        .map(|(v, w)| w * v * v)
        .sum::<f64>()
        .sqrt())
}

/// Weighted norm of the difference `x - y`.
pub fn weighted_distance(x: &[f64], y: &[f64], weights: &WeightVector) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Shape(format!(
            "lengths differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    weighted_norm(&diff, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_series(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
        (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn embed_small_cases() {
        let h = embed(&[1.0, 2.0, 3.0], 2).unwrap();
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 3.0]));

        let h = embed(&[5.0], 1).unwrap();
        assert_eq!(h, DMatrix::from_row_slice(1, 1, &[5.0]));
    }

    #[test]
    fn embed_matches_index_formula() {
        // brute force H[i,j] = p[i+j-1] (1-based)
        let p = [1.0, 0.0, 0.0, 0.0, 1.0];
        let h = embed(&p, 3).unwrap();
        let expected =
            DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(h, expected);
        for i in 1..=3usize {
            for j in 1..=3usize {
                assert_eq!(h[(i - 1, j - 1)], p[i + j - 2]);
            }
        }
    }

    #[test]
    fn embed_rejects_bad_window() {
        assert!(embed(&[1.0, 2.0], 3).is_err());
        assert!(embed(&[1.0, 2.0], 0).is_err());
    }

    #[test]
    fn embed_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = random_series(&mut rng, 9);
        let q = random_series(&mut rng, 9);
        let (alpha, beta) = (0.75, -2.5);
        let combo: Vec<f64> = p
            .iter()
            .zip(&q)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let lhs = embed(&combo, 4).unwrap();
        let rhs = embed(&p, 4).unwrap() * alpha + embed(&q, 4).unwrap() * beta;
        assert!((lhs - rhs).norm() == 0.0);
    }

    #[test]
    fn adjoint_sum_small_case() {
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(adjoint_sum(&x), vec![1.0, 5.0, 4.0]);
    }

    #[test]
    fn adjoint_of_embed_is_multiplicity_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_series(&mut rng, 12);
        let h = embed(&p, 5).unwrap();
        let sums = adjoint_sum(&h);
        let mult = multiplicities(5, 8);
        for i in 0..p.len() {
            assert!((sums[i] - mult[i] as f64 * p[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn adjoint_identity_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let window = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=8);
            let len = window + cols - 1;
            let p = random_series(&mut rng, len);
            let x = DMatrix::from_fn(window, cols, |_, _| rng.gen_range(-1.0..1.0));
            let lhs = embed(&p, window).unwrap().dot(&x);
            let rhs: f64 = p.iter().zip(adjoint_sum(&x)).map(|(a, b)| a * b).sum();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0),
                "adjoint identity violated: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn diagonal_average_small_case() {
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 4.0, 3.0]);
        assert_eq!(diagonal_average(&x), vec![1.0, 3.0, 3.0]);
    }

    #[test]
    fn diagonal_average_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let window = rng.gen_range(1..=9);
            let extra = rng.gen_range(0..=9);
            let p = random_series(&mut rng, window + extra);
            let back = diagonal_average(&embed(&p, window).unwrap());
            for (a, b) in p.iter().zip(&back) {
                assert!((a - b).abs() <= 1e-14 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn diagonal_average_is_closest_hankel_point() {
        // projection optimality sampled over random Hankel competitors
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let x = DMatrix::from_fn(4, 5, |_, _| rng.gen_range(-1.0..1.0));
        let projected = embed(&diagonal_average(&x), 4).unwrap();
        let base = (&projected - &x).norm();
        for _ in 0..100 {
            let y = embed(&random_series(&mut rng, 8), 4).unwrap();
            assert!(base <= (&y - &x).norm() + 1e-12);
        }
    }

    #[test]
    fn multiplicity_cases() {
        assert_eq!(multiplicity(1, 2, 4).unwrap(), 1);
        assert_eq!(multiplicity(3, 2, 4).unwrap(), 2);
        assert_eq!(multiplicity(35, 20, 50).unwrap(), 20);
        assert!(multiplicity(0, 2, 4).is_err());
        assert!(multiplicity(6, 2, 4).is_err());
    }

    #[test]
    fn multiplicity_matches_brute_force_count() {
        for &(window, cols) in &[(2usize, 4usize), (20, 50), (7, 3), (1, 1)] {
            for i in 1..=window + cols - 1 {
                let count = (1..=window)
                    .flat_map(|a| (1..=cols).map(move |b| (a, b)))
                    .filter(|(a, b)| a + b - 1 == i)
                    .count();
                assert_eq!(multiplicity(i, window, cols).unwrap(), count);
            }
        }
    }

    #[test]
    fn multiplicities_sum_to_matrix_size() {
        for &(window, cols) in &[(2usize, 4usize), (13, 13), (20, 50), (1, 6)] {
            let total: usize = multiplicities(window, cols).iter().sum();
            assert_eq!(total, window * cols);
        }
    }

    #[test]
    fn weighted_norm_cases() {
        let w = WeightVector::new(vec![1.0, 1.0]).unwrap();
        assert!((weighted_norm(&[3.0, 4.0], &w).unwrap() - 5.0).abs() < 1e-15);

        let w = WeightVector::new(vec![4.0, 9.0, 16.0]).unwrap();
        let got = weighted_norm(&[1.0, 1.0, 1.0], &w).unwrap();
        assert!((got - 29f64.sqrt()).abs() < 1e-15);

        assert!(weighted_norm(&[1.0], &w).is_err());
    }

    #[test]
    fn ones_weight_is_euclidean() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let x = random_series(&mut rng, 10);
        let w = WeightVector::ones(10);
        let euclid = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((weighted_norm(&x, &w).unwrap() - euclid).abs() < 1e-15);
    }

    #[test]
    fn weight_vector_rejects_non_positive() {
        assert!(WeightVector::new(vec![1.0, 0.0]).is_err());
        assert!(WeightVector::new(vec![1.0, -2.0]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn shape_constructors() {
        let s = HankelShape::new(13, 13, 13, 12).unwrap();
        assert_eq!(
            (s.window(), s.cols(), s.known(), s.missing()),
            (13, 13, 13, 12)
        );
        assert_eq!(s.total(), 25);

        let s = HankelShape::forecasting(24, 72, 6).unwrap();
        assert_eq!(s.cols(), 55);

        // missing corner may not touch the first row/column
        assert!(HankelShape::forecasting(5, 5, 5).is_err());
        // inconsistent dimensions
        assert!(HankelShape::new(3, 3, 3, 3).is_err());

        let c = HankelShape::square_corner(13).unwrap();
        assert_eq!(
            (c.window(), c.cols(), c.known(), c.missing()),
            (13, 13, 13, 12)
        );
    }
}
