use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("undefined gcd: both inputs are zero")]
    UndefinedGcd,
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("factorization degree {degree} exceeds the supported ceiling {ceiling}")]
    FactorCeiling { degree: usize, ceiling: usize },
    #[error("not a generating subspace: the basis has a common zero")]
    NotGenerating,
    #[error("dependent basis")]
    DependentBasis,
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("profile not realizable by any splitting type")]
    ProfileNotRealizable,
    #[error("point off curve")]
    PointOffCurve,
    #[error("special divisor: the points do not impose independent conditions")]
    SpecialDivisor,
    #[error("point lies on the base locus of the sub-series")]
    BaseLocusPoint,
    #[error("criterion requires birational morphism")]
    NotBirational,
    #[error("rule not applicable: {0}")]
    RuleNotApplicable(String),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("contradictory verdicts for {notion}: {first} vs {second}")]
    ContradictoryVerdicts {
        notion: String,
        first: String,
        second: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("retry budget of {budget} exhausted: {last}")]
    RetryBudgetExhausted { budget: usize, last: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UndefinedGcd => "undefined_gcd",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::FactorCeiling { .. } => "factor_ceiling",
            Error::NotGenerating => "not_generating",
            Error::DependentBasis => "dependent_basis",
            Error::InvalidSeries(_) => "invalid_series",
            Error::ProfileNotRealizable => "profile_not_realizable",
            Error::PointOffCurve => "point_off_curve",
            Error::SpecialDivisor => "special_divisor",
            Error::BaseLocusPoint => "base_locus_point",
            Error::NotBirational => "not_birational",
            Error::RuleNotApplicable(_) => "rule_not_applicable",
            Error::Validation(_) => "validation",
            Error::ContradictoryVerdicts { .. } => "contradictory_verdicts",
            Error::Precondition(_) => "precondition",
            Error::RetryBudgetExhausted { .. } => "retry_budget_exhausted",
            Error::Parse(_) => "parse",
            Error::Internal(_) => "internal",
            Error::Json(_) => "json",
        }
    }
}

/// Violated relations among curve and series invariants, one variant per
/// relation so callers can match on the exact failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("genus must be at least 2 (got {0})")]
    GenusTooSmall(i64),
    #[error("gonality must be at least 2 (got {0})")]
    GonalityTooSmall(i64),
    #[error("Clifford index must be nonnegative (got {0})")]
    NegativeClifford(i64),
    #[error("cliff ≤ γ−2 violated")]
    CliffordAboveGonality,
    #[error("γ−3 ≤ cliff violated")]
    CliffordBelowGonality,
    #[error("cliff = 0 iff hyperelliptic violated")]
    HyperellipticMismatch,
    #[error("genus 2 forces cliff = 0")]
    GenusTwoClifford,
    #[error("genus 3 forces cliff ∈ {{0, 1}}")]
    GenusThreeClifford,
    #[error("degree must be positive (got {0})")]
    NonPositiveDegree(i64),
    #[error("h0 and h1 must be nonnegative")]
    NegativeCohomology,
    #[error("Riemann–Roch violated: h0 − h1 = {lhs} but d − g + 1 = {rhs}")]
    RiemannRoch { lhs: i64, rhs: i64 },
    #[error("dim V must be at least 2 (got {0})")]
    DimVTooSmall(i64),
    #[error("dim V ≤ h0 violated")]
    DimVExceedsH0,
    #[error("complete flag disagrees with dim V = h0")]
    CompleteFlagMismatch,
    #[error("computes_clifford requires d − 2(h0 − 1) = cliff, h0 ≥ 2 and h1 ≥ 2")]
    ComputesCliffordInconsistent,
    #[error("ω(D) with deg D = 2 forces d = 2g and h1 = 0")]
    CanonicalTwistInconsistent,
}
