//! Dual span bundles of base-point-free linear series on the projective
//! line: splitting types from graded kernel dimensions, slope and
//! cohomological verdicts for split bundles, elementary modifications.

mod modification;
mod series;
mod splitting;

pub use modification::{
    elementary_modification_check, general_points, span_dimension, vanishing_subspace, ModificationReport, P1Point,
};
pub use series::{coefficient_matrix, LinearSeries};
pub use splitting::{
    cohomological_verdict, graded_kernel_profile, slope, split_slope_verdict, splitting_from_profile, splitting_type,
    CohomologicalVerdict, GradedProfile, SlopeVerdict, SplitVerdicts, SplittingReport, SplittingType,
};
