//! Reciprocal (pairwise-comparison) matrices: Perron vectors, efficiency of
//! weight vectors through the induced digraph, well-behaved classification,
//! and one-row-one-column extensions with prescribed, efficient or
//! inefficient Perron vectors.
//!
//! Indices are 0-based throughout the library. Error messages and serialized
//! reports label vertices from 1.

pub mod char4;
pub mod efficiency;
pub mod error;
pub mod extension;
pub mod generators;
pub mod io;
pub mod matrix;
pub mod spectral;
pub mod survey;
pub mod wellbehaved;

pub use char4::{characterize_4x4, subvector_guarantee_4x4, Char4Witness};
pub use efficiency::{
    efficiency_oracle, induced_digraph, is_efficient, is_efficient_with,
    subvector_efficiency_profile, EfficiencyReport, InducedDigraph, PERRON_EDGE_TOL,
};
pub use error::{Error, Result};
pub use extension::{
    border_constant_column, extend_constant_row_sums, extend_efficient, extend_inefficient,
    extend_inefficient_via, extend_with_perron, ExtensionResult,
};
pub use matrix::{
    validate, ReciprocalMatrix, RowSumProfile, SimilarityTransform, WeightVector,
    DEFAULT_CONSISTENCY_TOL, DEFAULT_RECIPROCITY_TOL, FIXTURE_TOL,
};
pub use spectral::{geometric_mean_vector, perron, to_constant_row_sums, PerronResult};
pub use survey::{run_survey, run_theorem_sweep, Property, SurveyConfig, SurveyRow, SweepReport};
pub use wellbehaved::{classify, closed_form_root, f_eval, solve_f, WellBehavedClass, WellBehavedKind};
