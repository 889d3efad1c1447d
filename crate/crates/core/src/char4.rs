//! Inefficiency of the Perron vector for order-4 reciprocal matrices.
//!
//! At order 4 the Perron vector `w` is inefficient exactly when `G(A, w)` has
//! a sink, and exactly when the constant-row-sum form `B = D A D^{-1}`,
//! `D = diag(w)^{-1}`, has a row whose off-diagonal entries all exceed 1.

use serde::Serialize;

use crate::efficiency::{is_efficient_with, subvector_efficiency_profile_with, PERRON_EDGE_TOL};
use crate::error::{Error, Result};
use crate::io::{one_based, one_based_opt};
use crate::matrix::ReciprocalMatrix;
use crate::spectral::perron;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Char4Witness {
    pub inefficient: bool,
    #[serde(rename = "sinks", serialize_with = "one_based")]
    pub sink_vertices: Vec<usize>,
    /// `D` with `A = D^{-1} B D`, i.e. the reciprocals of the Perron vector.
    pub diagonal: Vec<f64>,
    #[serde(rename = "B")]
    pub constant_row_sum_form: ReciprocalMatrix,
    #[serde(serialize_with = "one_based_opt")]
    pub dominating_row: Option<usize>,
}

fn require_four(a: &ReciprocalMatrix) -> Result<()> {
    if a.order() != 4 {
        return Err(Error::WrongOrder { expected: 4, got: a.order() });
    }
    Ok(())
}

/// Rows of `b` whose off-diagonal entries all exceed 1 under the digraph's
/// edge relaxation, so that the row has no outgoing edge in `G(B, e)`.
fn dominating_rows(b: &ReciprocalMatrix, eps: f64) -> Vec<usize> {
    let n = b.order();
    (0..n)
        .filter(|&i| (0..n).filter(|&j| j != i).all(|j| b.get(i, j) * (1.0 - eps) > 1.0))
        .collect()
}

pub fn characterize_4x4(a: &ReciprocalMatrix) -> Result<Char4Witness> {
    require_four(a)?;
    let w = perron(a)?.vector;
    let diagonal: Vec<f64> = w.as_slice().iter().map(|v| 1.0 / v).collect();
    let b = a.conjugate_diagonal(&diagonal);
    let report = is_efficient_with(a, &w, PERRON_EDGE_TOL)?;
    let rows = dominating_rows(&b, PERRON_EDGE_TOL);

    let inefficient = !report.efficient;
    if inefficient != !rows.is_empty() || inefficient != !report.sinks.is_empty() {
        return Err(Error::InternalInconsistency(format!(
            "inefficient = {inefficient}, dominating rows {rows:?}, sinks {:?}",
            report.sinks
        )));
    }
    Ok(Char4Witness {
        inefficient,
        sink_vertices: report.sinks,
        diagonal,
        constant_row_sum_form: b,
        dominating_row: rows.first().copied(),
    })
}

/// Smallest `i` such that `w(i)` is efficient for `A(i)`, `w` the Perron
/// vector of `a`.
pub fn subvector_guarantee_4x4(a: &ReciprocalMatrix) -> Result<usize> {
    require_four(a)?;
    let w = perron(a)?.vector;
    subvector_efficiency_profile_with(a, &w, PERRON_EDGE_TOL)?
        .iter()
        .position(|&ok| ok)
        .ok_or(Error::NotFound)
}
