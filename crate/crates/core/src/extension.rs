//! One-row-one-column extensions of a reciprocal matrix.
//!
//! Every construction here bottoms out in the same step: a matrix `B` of order
//! `n-1` gets the border column `(r_max - r_i) + x`, where `x` is the root of
//! its extension function, which makes all row sums of the extension equal and
//! so its Perron vector `e_n`. Prescribed Perron vectors, inefficient and
//! efficient extensions are then obtained by diagonal conjugation around that
//! step. In every result the leading block is the caller's matrix verbatim.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{log_uniform, require_constant_row_sums, rng_from_seed, DEFAULT_SCALE};
use crate::matrix::{
    ReciprocalMatrix, SimilarityTransform, WeightVector, DEFAULT_CONSISTENCY_TOL,
};
use crate::spectral::perron;
use crate::wellbehaved::{closed_form_root, solve_f, DEFAULT_ROOT_TOL};

/// Attempts at drawing an inconsistent intermediate matrix before giving up.
pub const MAX_GROWTH_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionResult {
    pub matrix: ReciprocalMatrix,
    /// Root of the extension function used for the border column.
    pub root_x: f64,
    /// Diagonal `S` with `matrix = S C S^{-1}`, `C` the constant-row-sum (or
    /// constant-border) core of the construction. Identity when no conjugation
    /// was applied.
    pub transform: SimilarityTransform,
    /// Perron vector of `matrix` guaranteed by the construction, last entry 1.
    pub target_perron: WeightVector,
    pub warnings: Vec<String>,
}

/// Assemble `S C S^{-1}` but copy the leading block from `lead` so it is
/// reproduced bit for bit.
fn conjugate_border(lead: &ReciprocalMatrix, core: &ReciprocalMatrix, s: &[f64]) -> ReciprocalMatrix {
    let m = lead.order();
    let col: Vec<f64> = (0..m).map(|i| s[i] * core.get(i, m) / s[m]).collect();
    lead.bordered(&col)
}

/// The unique extension of `b` with Perron vector `e_n`.
pub fn extend_constant_row_sums(b: &ReciprocalMatrix) -> Result<ExtensionResult> {
    if b.order() < 2 {
        return Err(Error::OrderTooSmall { order: b.order(), min: 2 });
    }
    let p = b.row_sums();
    let x = solve_f(b, DEFAULT_ROOT_TOL);
    let r_max = p.max();
    let border: Vec<f64> = p.sums.iter().map(|r| (r_max - r) + x).collect();
    let n = b.order() + 1;
    Ok(ExtensionResult {
        matrix: b.bordered(&border),
        root_x: x,
        transform: SimilarityTransform::identity(n),
        target_perron: WeightVector::ones(n),
        warnings: Vec::new(),
    })
}

/// The unique `A` with `A(n) = b` and Perron vector proportional to `w`.
pub fn extend_with_perron(b: &ReciprocalMatrix, w: &WeightVector) -> Result<ExtensionResult> {
    if w.len() != b.order() + 1 {
        return Err(Error::DimensionMismatch { expected: b.order() + 1, got: w.len() });
    }
    let w = w.normalized_last();
    let inv: Vec<f64> = w.as_slice()[..b.order()].iter().map(|v| 1.0 / v).collect();
    let core = extend_constant_row_sums(&b.conjugate_diagonal(&inv))?;
    Ok(ExtensionResult {
        matrix: conjugate_border(b, &core.matrix, w.as_slice()),
        root_x: core.root_x,
        transform: SimilarityTransform::diagonal(w.as_slice().to_vec())?,
        target_perron: w,
        warnings: core.warnings,
    })
}

/// `[[T, a e], [e^T / a, 1]]` for constant-row-sum `t`. Its Perron vector is
/// `(e, x/a)` with `x` the closed-form root for `t`'s row sum; when `t` is
/// inconsistent that vector is inefficient and the new vertex is a sink.
pub fn border_constant_column(t: &ReciprocalMatrix, a: f64) -> Result<ExtensionResult> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::NonPositiveArgument(a));
    }
    let r = require_constant_row_sums(t)?;
    let k = t.order();
    let x = closed_form_root(r, k);
    let x0 = x / a;
    let mut scale = vec![1.0; k + 1];
    scale[k] = x0;
    Ok(ExtensionResult {
        matrix: t.bordered(&vec![a; k]),
        root_x: x,
        transform: SimilarityTransform::diagonal(scale.clone())?,
        target_perron: WeightVector::new(scale)?.normalized_last(),
        warnings: Vec::new(),
    })
}

/// Extend `b` (order `k`) to order `target_order` with an inefficient Perron
/// vector. When `k < target_order - 1` the intermediate matrix is grown from
/// `b` by seeded random bordering with log-uniform entries on `[1/9, 9]`.
pub fn extend_inefficient(
    b: &ReciprocalMatrix,
    target_order: usize,
    a: f64,
    c: f64,
    seed: u64,
) -> Result<ExtensionResult> {
    let k = b.order();
    if k + 1 > target_order {
        return Err(Error::DimensionMismatch { expected: target_order - 1, got: k });
    }
    if k + 1 == target_order {
        return extend_inefficient_via(b, b, a, c);
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_GROWTH_ATTEMPTS {
        let mut s = b.clone();
        while s.order() < target_order - 1 {
            let col: Vec<f64> = (0..s.order()).map(|_| log_uniform(&mut rng, DEFAULT_SCALE)).collect();
            s = s.bordered(&col);
        }
        if !s.is_consistent(DEFAULT_CONSISTENCY_TOL) {
            return extend_inefficient_via(b, &s, a, c);
        }
    }
    Err(Error::GrowthFailed { attempts: MAX_GROWTH_ATTEMPTS })
}

/// The inefficient extension through a caller-chosen intermediate `s` whose
/// leading block is `b`. The result has order `s.order() + 1` and
/// `A(n) = s`.
pub fn extend_inefficient_via(
    b: &ReciprocalMatrix,
    s: &ReciprocalMatrix,
    a: f64,
    c: f64,
) -> Result<ExtensionResult> {
    for v in [a, c] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NonPositiveArgument(v));
        }
    }
    let k = b.order();
    if s.order() < k {
        return Err(Error::DimensionMismatch { expected: k, got: s.order() });
    }
    for i in 0..k {
        for j in 0..k {
            let (x, y) = (b.get(i, j), s.get(i, j));
            if (x - y).abs() > 1e-12 * x.abs().max(y.abs()) {
                return Err(Error::IntermediateMismatch { row: i, col: j });
            }
        }
    }
    if s.is_consistent(DEFAULT_CONSISTENCY_TOL) {
        return Err(Error::ConsistentInputAtFullOrder { order: s.order() });
    }
    let mut warnings = Vec::new();
    if s.is_consistent(10.0 * DEFAULT_CONSISTENCY_TOL) {
        warnings.push(format!(
            "intermediate matrix is within {:e} of consistent; the construction is ill-conditioned",
            10.0 * DEFAULT_CONSISTENCY_TOL
        ));
    }

    let m = s.order();
    let v = perron(s)?.vector;
    let r_inv: Vec<f64> = v.as_slice().iter().map(|x| 1.0 / x).collect();
    let core = s.conjugate_diagonal(&r_inv);
    let r = require_constant_row_sums(&core)?;
    // A = D^{-1} A' D with D = R (+) [c]; the border column is v_i a c.
    let border: Vec<f64> = v.as_slice().iter().map(|vi| vi * a * c).collect();
    let x = closed_form_root(r, m);
    let mut s_diag = v.as_slice().to_vec();
    s_diag.push(1.0 / c);
    let mut target = v.into_vec();
    target.push(x / a / c);
    Ok(ExtensionResult {
        matrix: s.bordered(&border),
        root_x: x,
        transform: SimilarityTransform::diagonal(s_diag)?,
        target_perron: WeightVector::new(target)?.normalized_last(),
        warnings,
    })
}

/// Extend `b` with an efficient Perron vector by conjugating with the
/// diagonal of column `column` (0-based), extending to constant row sums and
/// conjugating back.
pub fn extend_efficient(b: &ReciprocalMatrix, column: usize) -> Result<ExtensionResult> {
    let k = b.order();
    if column >= k {
        return Err(Error::IndexOutOfRange { index: column, order: k });
    }
    let col = b.column(column);
    let d: Vec<f64> = col.iter().map(|v| 1.0 / v).collect();
    let conj = b.conjugate_diagonal(&d);
    // Row and column `column` of the conjugate are all ones up to rounding.
    let upper = |i: usize, j: usize| if i == column || j == column { 1.0 } else { conj.get(i, j) };
    let scaled = ReciprocalMatrix::from_upper(k, upper);
    let core = extend_constant_row_sums(&scaled)?;
    let mut s = col;
    s.push(1.0);
    Ok(ExtensionResult {
        matrix: conjugate_border(b, &core.matrix, &s),
        root_x: core.root_x,
        transform: SimilarityTransform::diagonal(s.clone())?,
        target_perron: WeightVector::new(s)?,
        warnings: core.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efficiency::{is_efficient_with, PERRON_EDGE_TOL};
    use crate::generators::{bozoki, random_consistent};

    #[test]
    fn ones_extends_to_ones() {
        for k in 2..6 {
            let j = ReciprocalMatrix::ones(k);
            let r = extend_constant_row_sums(&j).unwrap();
            assert_eq!(r.root_x, 1.0);
            assert_eq!(r.matrix, ReciprocalMatrix::ones(k + 1));
            let r = extend_with_perron(&j, &WeightVector::ones(k + 1)).unwrap();
            assert_eq!(r.matrix, ReciprocalMatrix::ones(k + 1));
            for col in 0..k {
                assert_eq!(extend_efficient(&j, col).unwrap().matrix, ReciprocalMatrix::ones(k + 1));
            }
        }
    }

    #[test]
    fn constant_row_sums_after_extension() {
        let b = ReciprocalMatrix::from_upper(4, |i, j| 1.0 + (i + 2 * j) as f64 / 3.0);
        let r = extend_constant_row_sums(&b).unwrap();
        let p = r.matrix.row_sums();
        assert!(p.relative_spread() < 1e-12, "{}", p.relative_spread());
        assert!(r.root_x <= 1.0);
    }

    #[test]
    fn leading_block_is_verbatim() {
        let b = ReciprocalMatrix::from_upper(3, |i, j| 0.3 + (i * j) as f64);
        let w = WeightVector::new(vec![0.5, 2.0, 1.5, 3.0]).unwrap();
        for r in [
            extend_with_perron(&b, &w).unwrap(),
            extend_efficient(&b, 2).unwrap(),
            extend_inefficient(&b, 4, 1.0, 1.0, 0).unwrap(),
        ] {
            assert_eq!(r.matrix.principal_submatrix(&[3]).unwrap(), b);
        }
    }

    #[test]
    fn dimension_errors() {
        let b = ReciprocalMatrix::ones(3);
        assert!(matches!(
            extend_with_perron(&b, &WeightVector::ones(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(extend_efficient(&b, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(
            extend_inefficient(&b, 3, 1.0, 1.0, 0),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(border_constant_column(&b, 0.0).is_err());
    }

    #[test]
    fn consistent_gate() {
        let b = random_consistent(3, 9.0, 5);
        assert!(matches!(
            extend_inefficient(&b, 4, 1.0, 1.0, 0),
            Err(Error::ConsistentInputAtFullOrder { order: 3 })
        ));
        let r = extend_inefficient(&b, 5, 1.0, 1.0, 0).unwrap();
        assert_eq!(r.matrix.order(), 5);
        assert_eq!(r.matrix.retain(&[0, 1, 2]).unwrap(), b);
        let p = perron(&r.matrix).unwrap();
        let rep = is_efficient_with(&r.matrix, &p.vector, PERRON_EDGE_TOL).unwrap();
        assert!(!rep.efficient);
        assert_eq!(rep.sinks, vec![4]);
    }

    #[test]
    fn intermediate_must_contain_block() {
        let b = bozoki(3, 2.0).unwrap();
        let s = bozoki(4, 2.0).unwrap();
        assert!(matches!(
            extend_inefficient_via(&b, &s, 1.0, 1.0),
            Err(Error::IntermediateMismatch { .. })
        ));
    }

    #[test]
    fn border_constant_column_perron() {
        let t = bozoki(3, 2.0).unwrap();
        for a in [0.25, 1.0, 7.0] {
            let r = border_constant_column(&t, a).unwrap();
            let p = perron(&r.matrix).unwrap();
            assert!(p.vector.proportionality_error(&r.target_perron) < 1e-9);
        }
    }
}
