//! Monte Carlo frequency of Perron-vector inefficiency, and seeded sweeps
//! that check structural properties of reciprocal matrices on random inputs.
//!
//! Every sample draws from its own RNG stream seeded by
//! `seed ^ mix(tag, index)`, and results are reduced in index order, so the
//! output does not depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::char4::{characterize_4x4, subvector_guarantee_4x4};
use crate::efficiency::{
    is_efficient, is_efficient_with, subvector_efficiency_profile, PERRON_EDGE_TOL,
};
use crate::error::{Error, Result};
use crate::extension::{border_constant_column, extend_constant_row_sums};
use crate::generators::{
    log_uniform, random_consistent_with, random_reciprocal_with, rng_from_seed, DEFAULT_SCALE,
};
use crate::io::fmt17;
use crate::matrix::{ReciprocalMatrix, WeightVector, DEFAULT_CONSISTENCY_TOL};
use crate::spectral::{perron, to_constant_row_sums, DEFAULT_EIG_TOL};
use crate::wellbehaved::{classify, WellBehavedKind};

pub const CSV_HEADER: &str = "dim,samples,inefficient,sinks,sources,mean_lambda_gap";

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of sample `index` in stream `tag`.
pub fn sample_seed(seed: u64, tag: u64, index: u64) -> u64 {
    seed ^ splitmix64(splitmix64(tag) ^ index)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InternalInconsistency(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyConfig {
    pub dims: Vec<usize>,
    pub samples_per_dim: usize,
    pub scale: f64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        Self { dims: vec![3, 4, 5, 6, 7], samples_per_dim: 1000, scale: DEFAULT_SCALE, seed: 0, workers: 1 }
    }
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&d) = self.dims.iter().find(|&&d| d < 3) {
            return Err(Error::OrderTooSmall { order: d, min: 3 });
        }
        if self.samples_per_dim == 0 {
            return Err(Error::NonPositiveArgument(0.0));
        }
        if !(self.scale.is_finite() && self.scale >= 1.0) {
            return Err(Error::NonPositiveArgument(self.scale));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyRow {
    pub dim: usize,
    pub samples: usize,
    pub inefficient_count: usize,
    /// Inefficient samples whose digraph has a sink.
    pub sink_count: usize,
    /// Inefficient samples whose digraph has a source.
    pub source_count: usize,
    /// Mean of `lambda - dim`.
    pub mean_lambda_gap: f64,
}

impl SurveyRow {
    pub fn inefficient_fraction(&self) -> f64 {
        self.inefficient_count as f64 / self.samples as f64
    }
}

struct Sample {
    inefficient: bool,
    sink: bool,
    source: bool,
    gap: f64,
}

fn survey_sample(dim: usize, scale: f64, seed: u64) -> Result<Sample> {
    let a = random_reciprocal_with(&mut rng_from_seed(seed), dim, scale);
    let p = perron(&a)?;
    let r = is_efficient_with(&a, &p.vector, PERRON_EDGE_TOL)?;
    Ok(Sample {
        inefficient: !r.efficient,
        sink: !r.efficient && !r.sinks.is_empty(),
        source: !r.efficient && !r.sources.is_empty(),
        gap: p.eigenvalue - dim as f64,
    })
}

pub fn run_survey(cfg: &SurveyConfig) -> Result<Vec<SurveyRow>> {
    cfg.validate()?;
    let pool = pool(cfg.workers)?;
    cfg.dims
        .iter()
        .map(|&dim| {
            let samples: Vec<Sample> = pool.install(|| {
                (0..cfg.samples_per_dim)
                    .into_par_iter()
                    .map(|i| survey_sample(dim, cfg.scale, sample_seed(cfg.seed, dim as u64, i as u64)))
                    .collect::<Result<_>>()
            })?;
            let gap_sum: f64 = samples.iter().map(|s| s.gap).sum();
            Ok(SurveyRow {
                dim,
                samples: samples.len(),
                inefficient_count: samples.iter().filter(|s| s.inefficient).count(),
                sink_count: samples.iter().filter(|s| s.sink).count(),
                source_count: samples.iter().filter(|s| s.source).count(),
                mean_lambda_gap: gap_sum / samples.len() as f64,
            })
        })
        .collect()
}

pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.dim,
            r.samples,
            r.inefficient_count,
            r.sink_count,
            r.source_count,
            fmt17(r.mean_lambda_gap)
        ));
    }
    out
}

/// Properties checked by [`run_theorem_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// A constant-row-sum extension of a not well-behaved block has
    /// inefficient `e_n` with sink `n`; conversely, if `e_{n-1}` is efficient
    /// for the block and `e_n` is not for the extension, the block is not
    /// well-behaved.
    WellBehavedExtension,
    /// Any bordering of a consistent block has efficient Perron vector.
    ConsistentBlockBorder,
    /// Two efficient `(n-1)`-subvectors make the vector efficient.
    TwoSubvectors,
    /// Bordering an inconsistent constant-row-sum block by a constant column
    /// gives an inefficient Perron vector with sink `n`.
    ConstantColumnBorder,
    /// At order 4, Perron inefficiency, a sink, and a dominating row of the
    /// constant-row-sum form coincide.
    SinkEquivalence4,
    /// At order 4 some 3-subvector of the Perron vector is efficient.
    SubvectorGuarantee4,
    /// Consistent matrices are well-behaved.
    ConsistentWellBehaved,
    /// The entries of a reciprocal matrix sum to at least `n^2`.
    EntrySum,
    /// The Perron eigenvalue is at least `n`, with equality for consistent
    /// matrices.
    EigenvalueBound,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Self::WellBehavedExtension,
        Self::ConsistentBlockBorder,
        Self::TwoSubvectors,
        Self::ConstantColumnBorder,
        Self::SinkEquivalence4,
        Self::SubvectorGuarantee4,
        Self::ConsistentWellBehaved,
        Self::EntrySum,
        Self::EigenvalueBound,
    ];

    pub fn name(self) -> &'static str {
        self.aliases()[0]
    }

    /// Accepted spellings; the first is canonical.
    pub fn aliases(self) -> &'static [&'static str] {
        match self {
            Self::WellBehavedExtension => &["well-behaved-extension", "t2"],
            Self::ConsistentBlockBorder => &["consistent-block-border", "t6"],
            Self::TwoSubvectors => &["two-subvectors", "thind"],
            Self::ConstantColumnBorder => &["constant-column-border", "c4"],
            Self::SinkEquivalence4 => &["sink-equivalence-4", "c27"],
            Self::SubvectorGuarantee4 => &["subvector-guarantee-4", "t5"],
            Self::ConsistentWellBehaved => &["consistent-well-behaved", "lconswell"],
            Self::EntrySum => &["entry-sum", "ll1"],
            Self::EigenvalueBound => &["eigenvalue-bound", "lambda"],
        }
    }

    fn tag(self) -> u64 {
        0x5eed_0000 + Self::ALL.iter().position(|&p| p == self).unwrap_or(0) as u64
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|p| p.aliases().contains(&key.as_str()))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// A failing instance, reproducible from `seed` or directly from its data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub seed: u64,
    pub matrix: ReciprocalMatrix,
    pub vector: Option<WeightVector>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub property: Property,
    pub samples: usize,
    /// Samples on which the hypothesis held and the conclusion was tested.
    pub checked: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

enum Outcome {
    Skipped,
    Held,
    Failed(ReciprocalMatrix, Option<WeightVector>, String),
}

fn fail(a: &ReciprocalMatrix, w: Option<&WeightVector>, detail: impl Into<String>) -> Outcome {
    Outcome::Failed(a.clone(), w.cloned(), detail.into())
}

fn held_if(ok: bool, a: &ReciprocalMatrix, w: Option<&WeightVector>, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Held
    } else {
        fail(a, w, detail())
    }
}

/// Random inconsistent constant-row-sum matrix of order `k`.
fn random_constant_row_sum<R: Rng>(rng: &mut R, k: usize) -> Result<ReciprocalMatrix> {
    let (_, t) = to_constant_row_sums(&random_reciprocal_with(rng, k, DEFAULT_SCALE))?;
    Ok(t)
}

fn check_sample(property: Property, seed: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(seed);
    let rng = &mut rng;
    Ok(match property {
        Property::WellBehavedExtension => {
            let k = rng.random_range(3..=6);
            // near-constant row sums reach the not well-behaved regime
            let b = if rng.random::<bool>() {
                let t = random_constant_row_sum(rng, k)?;
                let jitter = rng.random_range(1.0..1.3);
                ReciprocalMatrix::from_upper(k, |i, j| t.get(i, j) * log_uniform(rng, jitter))
            } else {
                let scale = rng.random_range(1.2..DEFAULT_SCALE);
                random_reciprocal_with(rng, k, scale)
            };
            let ext = extend_constant_row_sums(&b)?;
            let e = WeightVector::ones(k + 1);
            let r = is_efficient(&ext.matrix, &e)?;
            let kind = classify(&b).kind;
            if kind == WellBehavedKind::NotWellBehaved {
                held_if(!r.efficient && r.sinks.contains(&k), &ext.matrix, Some(&e), || {
                    format!("block not well-behaved but sinks are {:?}", r.sinks)
                })
            } else if is_efficient(&b, &WeightVector::ones(k))?.efficient {
                held_if(r.efficient, &ext.matrix, Some(&e), || {
                    format!("block is {kind} with e efficient, but e_n is inefficient")
                })
            } else {
                Outcome::Skipped
            }
        }
        Property::ConsistentBlockBorder => {
            let k = rng.random_range(2..=6);
            let b = random_consistent_with(rng, k, DEFAULT_SCALE);
            let col: Vec<f64> = (0..k).map(|_| log_uniform(rng, DEFAULT_SCALE)).collect();
            let a = b.bordered(&col);
            let w = perron(&a)?.vector;
            let r = is_efficient_with(&a, &w, PERRON_EDGE_TOL)?;
            held_if(r.efficient, &a, Some(&w), || format!("components {:?}", r.condensation))
        }
        Property::TwoSubvectors => {
            let n = rng.random_range(3..=7);
            let a = random_reciprocal_with(rng, n, DEFAULT_SCALE);
            let p = perron(&a)?.vector;
            let spread = rng.random_range(1.0..1.5);
            let w = WeightVector::new(p.as_slice().iter().map(|v| v * log_uniform(rng, spread)).collect())?;
            let profile = subvector_efficiency_profile(&a, &w)?;
            if profile.iter().filter(|&&b| b).count() < 2 {
                Outcome::Skipped
            } else {
                let r = is_efficient(&a, &w)?;
                held_if(r.efficient, &a, Some(&w), || format!("profile {profile:?} but inefficient"))
            }
        }
        Property::ConstantColumnBorder => {
            let k = rng.random_range(3..=6);
            let t = random_constant_row_sum(rng, k)?;
            if t.is_consistent(DEFAULT_CONSISTENCY_TOL) {
                Outcome::Skipped
            } else {
                let ext = border_constant_column(&t, log_uniform(rng, DEFAULT_SCALE))?;
                let w = perron(&ext.matrix)?.vector;
                let r = is_efficient_with(&ext.matrix, &w, PERRON_EDGE_TOL)?;
                held_if(!r.efficient && r.sinks == [k], &ext.matrix, Some(&w), || {
                    format!("efficient = {}, sinks {:?}", r.efficient, r.sinks)
                })
            }
        }
        Property::SinkEquivalence4 => {
            let scale = if rng.random::<bool>() { 3.0 } else { DEFAULT_SCALE };
            let a = random_reciprocal_with(rng, 4, scale);
            match characterize_4x4(&a) {
                Err(Error::InternalInconsistency(msg)) => fail(&a, None, msg),
                Err(e) => return Err(e),
                Ok(wit) => {
                    let d = &wit.diagonal;
                    let inv: Vec<f64> = d.iter().map(|v| 1.0 / v).collect();
                    let back = wit.constant_row_sum_form.conjugate_diagonal(&inv);
                    let err = (0..16)
                        .map(|k| (back.as_slice()[k] / a.as_slice()[k] - 1.0).abs())
                        .fold(0.0, f64::max);
                    held_if(err <= 1e-9, &a, None, || format!("round trip error {err:e}"))
                }
            }
        }
        Property::SubvectorGuarantee4 => {
            let scale = if rng.random::<bool>() { 3.0 } else { DEFAULT_SCALE };
            let a = random_reciprocal_with(rng, 4, scale);
            match subvector_guarantee_4x4(&a) {
                Err(Error::NotFound) => fail(&a, None, "no efficient 3-subvector"),
                Err(e) => return Err(e),
                Ok(_) => Outcome::Held,
            }
        }
        Property::ConsistentWellBehaved => {
            let k = rng.random_range(2..=8);
            let scale = if rng.random::<bool>() { 1.5 } else { DEFAULT_SCALE };
            let b = random_consistent_with(rng, k, scale);
            let c = classify(&b);
            held_if(c.kind.is_well_behaved(), &b, None, || format!("{c:?}"))
        }
        Property::EntrySum => {
            let n = rng.random_range(2..=7);
            let a = random_reciprocal_with(rng, n, DEFAULT_SCALE);
            let total = a.entry_total();
            let bound = (n * n) as f64;
            let ok = total > bound || (total == bound && a.is_ones(0.0));
            held_if(ok, &a, None, || format!("entry total {total} against {bound}"))
        }
        Property::EigenvalueBound => {
            let n = rng.random_range(3..=7);
            let consistent = rng.random::<bool>();
            let a = if consistent {
                random_consistent_with(rng, n, DEFAULT_SCALE)
            } else {
                random_reciprocal_with(rng, n, DEFAULT_SCALE)
            };
            let p = perron(&a)?;
            let nf = n as f64;
            let ok = p.eigenvalue >= nf * (1.0 - DEFAULT_EIG_TOL)
                && (!consistent || p.eigenvalue - nf <= nf * DEFAULT_EIG_TOL);
            held_if(ok, &a, Some(&p.vector), || format!("eigenvalue {}", p.eigenvalue))
        }
    })
}

/// Check `property` on `samples` seeded random instances. The reported
/// counterexample, if any, is the failing sample with the smallest index.
pub fn run_theorem_sweep(property: Property, samples: usize, seed: u64) -> Result<SweepReport> {
    let outcomes: Vec<Outcome> = (0..samples)
        .into_par_iter()
        .map(|i| check_sample(property, sample_seed(seed, property.tag(), i as u64)))
        .collect::<Result<_>>()?;
    let checked = outcomes.iter().filter(|o| !matches!(o, Outcome::Skipped)).count();
    let counterexample = outcomes.into_iter().enumerate().find_map(|(index, o)| match o {
        Outcome::Failed(matrix, vector, detail) => Some(Counterexample {
            index,
            seed: sample_seed(seed, property.tag(), index as u64),
            matrix,
            vector,
            detail,
        }),
        _ => None,
    });
    Ok(SweepReport { property, samples, checked, passed: counterexample.is_none(), counterexample })
}

/// Re-run a single sample of a sweep from its derived seed.
pub fn rerun_sample(property: Property, sample_seed: u64) -> Result<bool> {
    Ok(!matches!(check_sample(property, sample_seed)?, Outcome::Failed(..)))
}
