//! The extension function of a reciprocal matrix and the well-behaved
//! classification built on it.
//!
//! For `B` of order `k` with row sums `r_i` and `r_max = max r_i`,
//!
//! ```text
//! f(x) = sum_i 1 / (r_max - r_i + x) + 1 - r_max - x,   x > 0,
//! ```
//!
//! is strictly decreasing with range all of R, so it has exactly one positive
//! root. That root fixes the border column of the unique constant-row-sum
//! extension of `B`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ReciprocalMatrix, RowSumProfile};

/// Relative bracket width at which root bisection stops.
pub const DEFAULT_ROOT_TOL: f64 = 1e-14;

/// `f(x) = sum_i 1/(o_i + x) + 1 - c - x` with offsets `o_i >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionFunction {
    constant: f64,
    offsets: Vec<f64>,
}

impl ExtensionFunction {
    /// General form with constant `c` and nonnegative offsets.
    pub fn new(constant: f64, offsets: Vec<f64>) -> Self {
        debug_assert!(offsets.iter().all(|&o| o >= 0.0));
        Self { constant, offsets }
    }

    /// The function associated with a matrix through its row sums.
    pub fn from_row_sums(sums: &[f64]) -> Self {
        let r_max = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::new(r_max, sums.iter().map(|r| r_max - r).collect())
    }

    pub fn from_profile(p: &RowSumProfile) -> Self {
        Self::from_row_sums(&p.sums)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.offsets.iter().map(|o| 1.0 / (o + x)).sum::<f64>() + 1.0 - self.constant - x
    }

    pub fn root(&self) -> f64 {
        self.root_with(DEFAULT_ROOT_TOL)
    }

    /// Unique positive root by bracketing from 1 and bisection.
    pub fn root_with(&self, rel_tol: f64) -> f64 {
        let mut lo = 1.0;
        let mut f_lo = self.eval(lo);
        if f_lo == 0.0 {
            return lo;
        }
        while f_lo <= 0.0 {
            lo *= 0.5;
            f_lo = self.eval(lo);
        }
        let mut hi = 1.0;
        let mut f_hi = self.eval(hi);
        while f_hi >= 0.0 {
            if f_hi == 0.0 {
                return hi;
            }
            hi *= 2.0;
            f_hi = self.eval(hi);
        }
        // lo < hi, f(lo) > 0 > f(hi)
        while hi - lo > rel_tol * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

pub fn f_eval(b: &ReciprocalMatrix, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::NonPositiveArgument(x));
    }
    Ok(ExtensionFunction::from_profile(&b.row_sums()).eval(x))
}

/// The positive root of the extension function of `b`; never exceeds 1.
pub fn solve_f(b: &ReciprocalMatrix, rel_tol: f64) -> f64 {
    ExtensionFunction::from_profile(&b.row_sums()).root_with(rel_tol)
}

/// Root of `k/x + 1 - a1 - x`, i.e. of the extension function when every
/// offset vanishes: `(1 - a1 + sqrt((1 - a1)^2 + 4k)) / 2`.
pub fn closed_form_root(a1: f64, k: usize) -> f64 {
    let b = 1.0 - a1;
    let disc = (b * b + 4.0 * k as f64).sqrt();
    // rationalized form for b < 0, where b + disc cancels
    if b >= 0.0 {
        (b + disc) / 2.0
    } else {
        2.0 * k as f64 / (disc - b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WellBehavedKind {
    TypeI,
    TypeII,
    NotWellBehaved,
}

impl WellBehavedKind {
    pub fn is_well_behaved(self) -> bool {
        self != Self::NotWellBehaved
    }
}

impl fmt::Display for WellBehavedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TypeI => "type I",
            Self::TypeII => "type II",
            Self::NotWellBehaved => "not well-behaved",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WellBehavedClass {
    pub kind: WellBehavedKind,
    /// `r_max - r_min`.
    pub gap: f64,
    /// `f(1 + r_min - r_max)`, only defined when `gap < 1`.
    pub boundary_value: Option<f64>,
}

pub fn classify(b: &ReciprocalMatrix) -> WellBehavedClass {
    classify_profile(&b.row_sums())
}

pub fn classify_profile(p: &RowSumProfile) -> WellBehavedClass {
    let gap = p.gap();
    if gap >= 1.0 {
        return WellBehavedClass { kind: WellBehavedKind::TypeI, gap, boundary_value: None };
    }
    let r_min = p.min();
    let boundary = p.sums.iter().map(|r| 1.0 / (1.0 + r_min - r)).sum::<f64>() - r_min;
    let kind = if boundary >= 0.0 {
        WellBehavedKind::TypeII
    } else {
        WellBehavedKind::NotWellBehaved
    };
    WellBehavedClass { kind, gap, boundary_value: Some(boundary) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three(upper: [f64; 3]) -> ReciprocalMatrix {
        ReciprocalMatrix::from_upper(3, |i, j| upper[i + j - 1])
    }

    #[test]
    fn ones_root_is_exactly_one() {
        for k in 2..8 {
            let j = ReciprocalMatrix::ones(k);
            assert_eq!(f_eval(&j, 1.0).unwrap(), 0.0);
            assert_eq!(solve_f(&j, DEFAULT_ROOT_TOL), 1.0);
        }
    }

    #[test]
    fn f_rejects_nonpositive() {
        let j = ReciprocalMatrix::ones(3);
        assert!(matches!(f_eval(&j, 0.0), Err(Error::NonPositiveArgument(_))));
        assert!(f_eval(&j, -1.0).is_err());
    }

    #[test]
    fn closed_form_values() {
        for k in 1..10 {
            assert!((closed_form_root(k as f64, k) - 1.0).abs() < 1e-15);
        }
        assert!((closed_form_root(0.0, 4) - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-15);
        // large a1 exercises the cancellation-free branch
        let x = closed_form_root(1e8, 3);
        let f = ExtensionFunction::new(1e8, vec![0.0; 3]);
        assert!(f.eval(x).abs() < 1e-6, "{}", f.eval(x));
    }

    #[test]
    fn root_is_bracketed_for_far_roots() {
        // root near 1e-6 and near 1e6
        let small = ExtensionFunction::new(1e6, vec![0.0]);
        let x = small.root();
        assert!((x - closed_form_root(1e6, 1)).abs() <= 1e-13 * x);
        let large = ExtensionFunction::new(-1e6, vec![0.0]);
        let x = large.root();
        assert!((x - closed_form_root(-1e6, 1)).abs() <= 1e-13 * x);
    }

    #[test]
    fn consistent_example_types() {
        // J_k is type II with boundary value exactly 0
        let c = classify(&ReciprocalMatrix::ones(4));
        assert_eq!(c.kind, WellBehavedKind::TypeII);
        assert_eq!(c.boundary_value, Some(0.0));
        // [[1, 5e^T], [e/5, J]] is type I
        let m = ReciprocalMatrix::from_upper(4, |i, _| if i == 0 { 5.0 } else { 1.0 });
        assert_eq!(classify(&m).kind, WellBehavedKind::TypeI);
    }

    #[test]
    fn cyclic_is_not_well_behaved() {
        let a3 = three([5.0, 0.2, 5.0]);
        let c = classify(&a3);
        assert_eq!(c.kind, WellBehavedKind::NotWellBehaved);
        assert!(c.gap.abs() < 1e-12);
        assert!(c.boundary_value.unwrap() < 0.0);
    }

    #[test]
    fn boundary_formula_matches_f() {
        let b = three([1.2, 1.0, 1.0]);
        let p = b.row_sums();
        let c = classify(&b);
        let via_f = f_eval(&b, 1.0 + p.min() - p.max()).unwrap();
        assert!((c.boundary_value.unwrap() - via_f).abs() < 1e-14);
    }
}
