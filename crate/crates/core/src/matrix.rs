//! Dense reciprocal matrices and the elementary transformations on them.
//!
//! A reciprocal matrix `A = [a_ij]` is entrywise positive with `a_ji = 1/a_ij`
//! (so the diagonal is all ones). Storage is row-major; the regime of interest
//! is small to moderate order, so nothing here is sparse or blocked.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative reciprocity tolerance used when a caller has no better choice.
pub const DEFAULT_RECIPROCITY_TOL: f64 = 1e-9;
/// Reciprocity tolerance for matrices transcribed with 4 to 5 printed decimals.
pub const FIXTURE_TOL: f64 = 1e-3;
/// Consistency tolerance, measured in log space.
pub const DEFAULT_CONSISTENCY_TOL: f64 = 1e-8;

/// A validated reciprocal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalMatrix {
    order: usize,
    data: Vec<f64>,
}

/// Validate a square array as a reciprocal matrix.
///
/// Checks run in order: shape, positivity, unit diagonal, reciprocity. The
/// reciprocity error reports the worst pair. Entries are stored as given;
/// nothing is repaired.
pub fn validate(rows: &[Vec<f64>], tol: f64) -> Result<ReciprocalMatrix> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::OrderTooSmall { order: n, min: 2 });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare { row: i, len: row.len(), expected: n });
        }
    }
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::NonPositiveEntry { row: i, col: j, value: v });
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if (row[i] - 1.0).abs() > tol {
            return Err(Error::NonUnitDiagonal { index: i, value: row[i] });
        }
    }
    let mut worst: Option<(usize, usize, f64)> = None;
    for i in 0..n {
        for j in i + 1..n {
            let product = rows[i][j] * rows[j][i];
            let err = (product - 1.0).abs();
            if err > tol && worst.is_none_or(|(_, _, p)| err > (p - 1.0).abs()) {
                worst = Some((i, j, product));
            }
        }
    }
    if let Some((row, col, product)) = worst {
        return Err(Error::ReciprocityViolation { row, col, product, tolerance: tol });
    }
    Ok(ReciprocalMatrix { order: n, data: rows.iter().flatten().copied().collect() })
}

/// The consistent matrix `[w_i / w_j]`.
pub fn consistent_from_weights(w: &WeightVector) -> ReciprocalMatrix {
    let w = w.as_slice();
    ReciprocalMatrix::from_fn(w.len(), |i, j| w[i] / w[j])
}

impl ReciprocalMatrix {
    /// `J_n`, the all-ones matrix.
    pub fn ones(n: usize) -> Self {
        Self { order: n, data: vec![1.0; n * n] }
    }

    /// Build a matrix from its strict upper triangle; the lower triangle is
    /// filled with reciprocals and the diagonal with ones.
    pub fn from_upper(n: usize, mut upper: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![1.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j);
                data[i * n + j] = v;
                data[j * n + i] = 1.0 / v;
            }
        }
        Self { order: n, data }
    }

    /// Build a matrix entry by entry without checks. Callers guarantee
    /// positivity and reciprocity up to rounding.
    pub(crate) fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { order: n, data }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.order).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.order).map(<[f64]>::to_vec).collect()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        debug_assert_eq!(v.len(), self.order);
        self.data
            .chunks(self.order)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Sum of all entries. At least `n^2`, with equality only for `J_n`.
    pub fn entry_total(&self) -> f64 {
        self.data.iter().sum()
    }

    /// Largest `|a_ij a_ji - 1|` over all pairs.
    pub fn max_reciprocity_error(&self) -> f64 {
        let n = self.order;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) * self.get(j, i) - 1.0).abs());
            }
        }
        worst
    }

    /// Largest `|log a_ij + log a_jk - log a_ik|` over all triples.
    pub fn consistency_error(&self) -> f64 {
        let n = self.order;
        let logs: Vec<f64> = self.data.iter().map(|v| v.ln()).collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lij = logs[i * n + j];
                for k in 0..n {
                    let e = (lij + logs[j * n + k] - logs[i * n + k]).abs();
                    worst = worst.max(e);
                }
            }
        }
        worst
    }

    pub fn is_consistent(&self, tol: f64) -> bool {
        self.consistency_error() <= tol
    }

    pub fn is_ones(&self, tol: f64) -> bool {
        self.data.iter().all(|v| (v - 1.0).abs() <= tol)
    }

    pub fn row_sums(&self) -> RowSumProfile {
        let sums: Vec<f64> = self.data.chunks(self.order).map(|r| r.iter().sum()).collect();
        let n = self.order as f64;
        debug_assert!(
            sums.iter().sum::<f64>() >= n * n * (1.0 - 1e-3),
            "entry total below n^2 for a reciprocal matrix"
        );
        RowSumProfile::new(sums)
    }

    /// `A(K)`: the principal submatrix obtained by deleting the indices in `deleted`.
    pub fn principal_submatrix(&self, deleted: &[usize]) -> Result<Self> {
        let mut drop = vec![false; self.order];
        for &k in deleted {
            if k >= self.order {
                return Err(Error::IndexOutOfRange { index: k, order: self.order });
            }
            drop[k] = true;
        }
        let kept: Vec<usize> = (0..self.order).filter(|&i| !drop[i]).collect();
        self.retain(&kept)
    }

    /// `A[K]`: the principal submatrix on the indices in `kept`, in the given order.
    pub fn retain(&self, kept: &[usize]) -> Result<Self> {
        if let Some(&k) = kept.iter().find(|&&k| k >= self.order) {
            return Err(Error::IndexOutOfRange { index: k, order: self.order });
        }
        if kept.is_empty() {
            return Err(Error::OrderTooSmall { order: 0, min: 1 });
        }
        Ok(Self::from_fn(kept.len(), |i, j| self.get(kept[i], kept[j])))
    }

    /// `D A D^{-1}` for the positive diagonal `d`: entry `(i, j)` is `d_i a_ij / d_j`.
    pub fn conjugate_diagonal(&self, d: &[f64]) -> Self {
        debug_assert_eq!(d.len(), self.order);
        Self::from_fn(self.order, |i, j| d[i] * self.get(i, j) / d[j])
    }

    /// Monomial similarity `S A S^{-1}`.
    pub fn similar(&self, t: &SimilarityTransform) -> Result<Self> {
        t.apply(self)
    }

    /// Border with a last column `col` (length `n`) and the reciprocal last row.
    pub fn bordered(&self, col: &[f64]) -> Self {
        let n = self.order;
        debug_assert_eq!(col.len(), n);
        Self::from_fn(n + 1, |i, j| match (i < n, j < n) {
            (true, true) => self.get(i, j),
            (true, false) => col[i],
            (false, true) => 1.0 / col[j],
            (false, false) => 1.0,
        })
    }
}

impl Index<(usize, usize)> for ReciprocalMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.order + j]
    }
}

impl fmt::Display for ReciprocalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>11.5}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for ReciprocalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReciprocalMatrix", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("entries", &self.to_rows())?;
        st.end()
    }
}

/// A positive weight (priority) vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) =
            entries.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NonPositiveWeight { index, value });
        }
        Ok(Self(entries))
    }

    /// `e_n`.
    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Rescale so that the last entry is 1.
    pub fn normalized_last(&self) -> Self {
        let last = *self.0.last().expect("empty weight vector");
        Self(self.0.iter().map(|v| v / last).collect())
    }

    /// `w(K)`: delete the entries indexed by `deleted`.
    pub fn without(&self, deleted: &[usize]) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !deleted.contains(i))
                .map(|(_, &v)| v)
                .collect(),
        )
    }

    /// Largest relative difference between the two vectors after both are
    /// normalized to last entry 1.
    pub fn proportionality_error(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let a = self.normalized_last();
        let b = other.normalized_last();
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()))
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Vec<f64> {
        w.0
    }
}

impl Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Row sums with the positions of the extremes and a descending ordering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowSumProfile {
    pub sums: Vec<f64>,
    pub max_index: usize,
    pub min_index: usize,
    /// Indices sorted by nonincreasing row sum; ties keep index order.
    pub sorted_desc: Vec<usize>,
}

impl RowSumProfile {
    pub fn new(sums: Vec<f64>) -> Self {
        let mut sorted_desc: Vec<usize> = (0..sums.len()).collect();
        sorted_desc.sort_by(|&a, &b| sums[b].total_cmp(&sums[a]));
        let max_index = sorted_desc[0];
        let min_index = *sorted_desc.last().unwrap();
        Self { sums, max_index, min_index, sorted_desc }
    }

    pub fn max(&self) -> f64 {
        self.sums[self.max_index]
    }

    pub fn min(&self) -> f64 {
        self.sums[self.min_index]
    }

    /// `r_max - r_min`.
    pub fn gap(&self) -> f64 {
        self.max() - self.min()
    }

    /// `(r_max - r_min) / r_max`.
    pub fn relative_spread(&self) -> f64 {
        self.gap() / self.max()
    }
}

/// A monomial similarity `S = P D`.
///
/// Applied to a matrix it yields `S A S^{-1}` with entry `(i, j)` equal to
/// `d[p_i] a[p_i][p_j] / d[p_j]`; applied to a vector it yields
/// `(S w)_i = d[p_i] w[p_i]`, so the Perron vector of the image is `S w`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityTransform {
    pub diagonal: Vec<f64>,
    pub permutation: Vec<usize>,
}

impl SimilarityTransform {
    pub fn identity(n: usize) -> Self {
        Self { diagonal: vec![1.0; n], permutation: (0..n).collect() }
    }

    pub fn diagonal(d: Vec<f64>) -> Result<Self> {
        let n = d.len();
        Self::new(d, (0..n).collect())
    }

    pub fn new(diagonal: Vec<f64>, permutation: Vec<usize>) -> Result<Self> {
        if diagonal.len() != permutation.len() {
            return Err(Error::DimensionMismatch {
                expected: diagonal.len(),
                got: permutation.len(),
            });
        }
        if let Some((index, &value)) =
            diagonal.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::NonPositiveWeight { index, value });
        }
        let mut seen = vec![false; permutation.len()];
        for &p in &permutation {
            if p >= permutation.len() || seen[p] {
                return Err(Error::IndexOutOfRange { index: p, order: permutation.len() });
            }
            seen[p] = true;
        }
        Ok(Self { diagonal, permutation })
    }

    pub fn order(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_identity(&self) -> bool {
        self.diagonal.iter().all(|&d| d == 1.0)
            && self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn apply(&self, a: &ReciprocalMatrix) -> Result<ReciprocalMatrix> {
        if a.order() != self.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), got: a.order() });
        }
        let (d, p) = (&self.diagonal, &self.permutation);
        Ok(ReciprocalMatrix::from_fn(a.order(), |i, j| {
            d[p[i]] * a.get(p[i], p[j]) / d[p[j]]
        }))
    }

    pub fn apply_vector(&self, w: &WeightVector) -> Result<WeightVector> {
        if w.len() != self.order() {
            return Err(Error::DimensionMismatch { expected: self.order(), got: w.len() });
        }
        let (d, p) = (&self.diagonal, &self.permutation);
        Ok(WeightVector((0..w.len()).map(|i| d[p[i]] * w[p[i]]).collect()))
    }

    /// `S^{-1} = D^{-1} P^T`, written again in `P' D'` form.
    pub fn inverse(&self) -> Self {
        let n = self.order();
        let mut inv = vec![0; n];
        for (i, &p) in self.permutation.iter().enumerate() {
            inv[p] = i;
        }
        // d'[q_i] must equal 1 / d[i]; with q = p^{-1} that is d'[k] = 1 / d[p[k]].
        let diagonal = (0..n).map(|k| 1.0 / self.diagonal[self.permutation[k]]).collect();
        Self { diagonal, permutation: inv }
    }
}
