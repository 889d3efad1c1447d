//! Perron eigenpairs and the diagonal reduction to constant row sums.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ReciprocalMatrix, SimilarityTransform, WeightVector};

pub const DEFAULT_EIG_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Max-norm change between successive iterates (scaled to unit max entry)
/// below which the iteration is considered settled.
const STEP_TOL: f64 = 1e-13;

/// Dominant eigenpair of a positive matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronResult {
    pub eigenvalue: f64,
    /// Perron vector normalized so that its last entry is 1.
    pub vector: WeightVector,
    /// `max_i |(A w)_i - lambda w_i| / lambda`.
    pub residual: f64,
    pub iterations: usize,
}

pub fn perron(a: &ReciprocalMatrix) -> Result<PerronResult> {
    perron_with(a, DEFAULT_EIG_TOL, DEFAULT_MAX_ITER)
}

/// Power iteration from `e_n`. Deterministic for a given matrix.
pub fn perron_with(a: &ReciprocalMatrix, tol: f64, max_iter: usize) -> Result<PerronResult> {
    let n = a.order();
    let mut x = vec![1.0; n];
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let mut y = a.mul_vec(&x);
        let scale = y.iter().copied().fold(0.0, f64::max);
        y.iter_mut().for_each(|v| *v /= scale);
        let step = y.iter().zip(&x).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        x = y;
        if step <= STEP_TOL {
            // A tiny step only bounds the error when the spectral gap is
            // healthy, so the residual has the final say.
            if eigen_residual(a, &x).1 <= tol {
                break;
            }
        }
    }
    let last = x[n - 1];
    let w: Vec<f64> = x.iter().map(|v| v / last).collect();
    let (eigenvalue, residual) = eigen_residual(a, &w);
    if residual > tol {
        return Err(Error::NoConvergence { max_iter, residual });
    }
    Ok(PerronResult { eigenvalue, vector: WeightVector::new(w)?, residual, iterations })
}

/// Eigenvalue estimate `sum(Aw) / sum(w)` and the residual relative to it.
fn eigen_residual(a: &ReciprocalMatrix, w: &[f64]) -> (f64, f64) {
    let aw = a.mul_vec(w);
    let lambda = aw.iter().sum::<f64>() / w.iter().sum::<f64>();
    let res = aw
        .iter()
        .zip(w)
        .map(|(p, q)| (p - lambda * q).abs())
        .fold(0.0, f64::max)
        / lambda;
    (lambda, res)
}

/// `C = D A D^{-1}` with `D = diag(w)^{-1}`, `w` the Perron vector. `C` has
/// Perron vector `e_n`, i.e. all row sums equal the Perron eigenvalue.
pub fn to_constant_row_sums(
    a: &ReciprocalMatrix,
) -> Result<(SimilarityTransform, ReciprocalMatrix)> {
    let p = perron(a)?;
    let d: Vec<f64> = p.vector.as_slice().iter().map(|v| 1.0 / v).collect();
    let c = a.conjugate_diagonal(&d);
    Ok((SimilarityTransform::diagonal(d)?, c))
}

/// Entrywise geometric mean of the columns, `(prod_j a_ij)^(1/n)`, normalized
/// to last entry 1.
pub fn geometric_mean_vector(a: &ReciprocalMatrix) -> WeightVector {
    let n = a.order();
    let logs: Vec<f64> =
        (0..n).map(|i| a.row(i).iter().map(|v| v.ln()).sum::<f64>() / n as f64).collect();
    let last = logs[n - 1];
    WeightVector::new(logs.iter().map(|l| (l - last).exp()).collect())
        .expect("exp of a finite number is positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::consistent_from_weights;

    #[test]
    fn ones_matrix() {
        for n in 2..7 {
            let p = perron(&ReciprocalMatrix::ones(n)).unwrap();
            assert_eq!(p.eigenvalue, n as f64);
            assert_eq!(p.vector, WeightVector::ones(n));
            let (t, c) = to_constant_row_sums(&ReciprocalMatrix::ones(n)).unwrap();
            assert!(t.is_identity());
            assert_eq!(c, ReciprocalMatrix::ones(n));
        }
    }

    #[test]
    fn consistent_matrix_reduces_to_ones() {
        let w = WeightVector::new(vec![3.0, 0.7, 2.2, 1.0]).unwrap();
        let a = consistent_from_weights(&w);
        let p = perron(&a).unwrap();
        assert!((p.eigenvalue - 4.0).abs() < 1e-12);
        assert!(p.vector.proportionality_error(&w) < 1e-12);
        let (_, c) = to_constant_row_sums(&a).unwrap();
        assert!(c.is_ones(1e-12));
    }

    #[test]
    fn geometric_mean_of_rank_one() {
        let w = WeightVector::new(vec![2.0, 1.0, 1.0]).unwrap();
        let g = geometric_mean_vector(&consistent_from_weights(&w));
        assert!(g.proportionality_error(&w) < 1e-14);
        assert_eq!(geometric_mean_vector(&ReciprocalMatrix::ones(4)), WeightVector::ones(4));
    }

    #[test]
    fn iteration_cap_reports_no_convergence() {
        let upper = [[0.0, 2.0, 6.0, 2.0], [0.0, 0.0, 4.0, 3.0], [0.0, 0.0, 0.0, 0.5]];
        let a = ReciprocalMatrix::from_upper(4, |i, j| upper[i][j]);
        assert!(matches!(perron_with(&a, 1e-12, 1), Err(Error::NoConvergence { .. })));
    }
}
