//! Structured inconsistent constant-row-sum families and seeded random
//! reciprocal matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{
    consistent_from_weights, validate, ReciprocalMatrix, WeightVector, DEFAULT_CONSISTENCY_TOL,
    DEFAULT_RECIPROCITY_TOL,
};
use crate::wellbehaved::closed_form_root;

/// Half-range of the log-uniform entry distribution: entries lie in `[1/9, 9]`.
pub const DEFAULT_SCALE: f64 = 9.0;
/// Relative row-sum spread under which a matrix counts as constant-row-sum.
pub const CONSTANT_ROW_SUM_TOL: f64 = 1e-9;

/// Parameters shared by the generator families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorParams {
    pub order: usize,
    pub b: f64,
    pub scale: f64,
    pub seed: u64,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self { order: 3, b: 2.0, scale: DEFAULT_SCALE, seed: 0 }
    }
}

/// The deterministic RNG used everywhere a seed is accepted.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `exp(U(-ln s, ln s))`; exactly 1 when `s == 1`.
pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> f64 {
    let h = scale.ln().abs();
    if h == 0.0 {
        return 1.0;
    }
    rng.random_range(-h..h).exp()
}

fn check_b(b: f64) -> Result<()> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::NonPositiveArgument(b));
    }
    Ok(())
}

pub(crate) fn require_constant_row_sums(t: &ReciprocalMatrix) -> Result<f64> {
    let p = t.row_sums();
    let spread = p.relative_spread();
    if spread > CONSTANT_ROW_SUM_TOL {
        return Err(Error::NotConstantRowSums { spread });
    }
    Ok(p.sums.iter().sum::<f64>() / p.sums.len() as f64)
}

/// Circulant with `b` at `(i, i+1 mod k)`, `1/b` at `(i, i-1 mod k)` and ones
/// elsewhere. Row sums are `k - 2 + b + 1/b`.
pub fn bozoki(k: usize, b: f64) -> Result<ReciprocalMatrix> {
    if k < 3 {
        return Err(Error::OrderTooSmall { order: k, min: 3 });
    }
    check_b(b)?;
    Ok(ReciprocalMatrix::from_upper(k, |i, j| {
        if j == i + 1 {
            b
        } else if i == 0 && j == k - 1 {
            1.0 / b
        } else {
            1.0
        }
    }))
}

/// Reciprocal Toeplitz matrix with first row `(1, b, 1/b, b, ..., b, 1/b)`.
pub fn toeplitz_alt(k: usize, b: f64) -> Result<ReciprocalMatrix> {
    if k < 3 {
        return Err(Error::OrderTooSmall { order: k, min: 3 });
    }
    if k.is_multiple_of(2) {
        return Err(Error::OrderNotOdd { order: k });
    }
    check_b(b)?;
    Ok(ReciprocalMatrix::from_upper(k, |i, j| if (j - i) % 2 == 1 { b } else { 1.0 / b }))
}

/// `[[T0, T1], [T1, T0]]` for constant-row-sum `T0`, `T1` of equal order.
pub fn block_double(t0: &ReciprocalMatrix, t1: &ReciprocalMatrix) -> Result<ReciprocalMatrix> {
    if t0.order() != t1.order() {
        return Err(Error::ShapeMismatch { left: t0.order(), right: t1.order() });
    }
    require_constant_row_sums(t0)?;
    require_constant_row_sums(t1)?;
    let k = t0.order();
    let rows: Vec<Vec<f64>> = (0..2 * k)
        .map(|i| {
            (0..2 * k)
                .map(|j| {
                    let block = if (i < k) == (j < k) { t0 } else { t1 };
                    block.get(i % k, j % k)
                })
                .collect()
        })
        .collect();
    validate(&rows, DEFAULT_RECIPROCITY_TOL)
}

/// `[[T0, x e], [e^T / x, 1]]` with `x` the closed-form root for `T0`'s
/// row sum; the result again has constant row sums and is inconsistent.
pub fn bordered_growth(t0: &ReciprocalMatrix) -> Result<ReciprocalMatrix> {
    let r = require_constant_row_sums(t0)?;
    if t0.is_consistent(DEFAULT_CONSISTENCY_TOL) {
        return Err(Error::ConsistentInput);
    }
    let x = closed_form_root(r, t0.order());
    Ok(t0.bordered(&vec![x; t0.order()]))
}

pub fn random_reciprocal(n: usize, scale: f64, seed: u64) -> ReciprocalMatrix {
    random_reciprocal_with(&mut rng_from_seed(seed), n, scale)
}

/// Upper-triangle entries drawn independently log-uniform, row by row.
pub fn random_reciprocal_with<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ReciprocalMatrix {
    ReciprocalMatrix::from_upper(n, |_, _| log_uniform(rng, scale))
}

pub fn random_consistent(n: usize, scale: f64, seed: u64) -> ReciprocalMatrix {
    random_consistent_with(&mut rng_from_seed(seed), n, scale)
}

pub fn random_consistent_with<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ReciprocalMatrix {
    consistent_from_weights(&random_weights_with(rng, n, scale))
}

pub fn random_weights_with<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> WeightVector {
    WeightVector::new((0..n).map(|_| log_uniform(rng, scale)).collect())
        .expect("log-uniform draws are positive")
}
