use serde::{Deserialize, Serialize};

use crate::error::ValidationError;
use crate::scalar::rational;
use crate::Rational;

/// Numerical invariants of a smooth curve of genus at least two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub g: i64,
    pub gamma: i64,
    pub cliff: i64,
    pub hyperelliptic: bool,
}

/// Hypotheses that cannot be read off the numbers and are taken on trust.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesFlags {
    pub complete: bool,
    pub globally_generated: bool,
    pub birational: bool,
    pub computes_clifford: bool,
    pub is_canonical_twist_deg2: bool,
    pub general_subspace: bool,
}

/// A linear series `(L, V)` on the curve, by its numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesInvariants {
    pub d: i64,
    pub h0: i64,
    pub h1: i64,
    #[serde(rename = "dimV")]
    pub dim_v: i64,
    #[serde(default)]
    pub flags: SeriesFlags,
}

impl SeriesInvariants {
    /// `h⁰ − dim V`
    pub fn codim(&self) -> i64 {
        self.h0 - self.dim_v
    }

    /// `dim V − 1`
    pub fn r(&self) -> i64 {
        self.dim_v - 1
    }

    /// `μ(M) = −d/(dim V − 1)`
    pub fn slope(&self) -> Rational {
        rational(-self.d, self.r())
    }

    /// Degree `2g − 2` with `h¹ = 1` forces `L ≅ ω_C`.
    pub fn is_canonical(&self, c: &CurveInvariants) -> bool {
        self.d == 2 * c.g - 2 && self.h1 == 1
    }
}

/// Input document `{"curve": …, "series": …}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub curve: CurveInvariants,
    pub series: SeriesInvariants,
}

pub fn validate_curve(c: &CurveInvariants) -> Result<(), ValidationError> {
    use ValidationError::*;
    if c.g < 2 {
        return Err(GenusTooSmall(c.g));
    }
    if c.gamma < 2 {
        return Err(GonalityTooSmall(c.gamma));
    }
    if c.cliff < 0 {
        return Err(NegativeClifford(c.cliff));
    }
    if c.cliff > c.gamma - 2 {
        return Err(CliffordAboveGonality);
    }
    if c.cliff < c.gamma - 3 {
        return Err(CliffordBelowGonality);
    }
    if (c.cliff == 0) != c.hyperelliptic {
        return Err(HyperellipticMismatch);
    }
    if c.g == 2 && c.cliff != 0 {
        return Err(GenusTwoClifford);
    }
    if c.g == 3 && c.cliff > 1 {
        return Err(GenusThreeClifford);
    }
    Ok(())
}

pub fn validate_series(c: &CurveInvariants, s: &SeriesInvariants) -> Result<(), ValidationError> {
    use ValidationError::*;
    if s.d <= 0 {
        return Err(NonPositiveDegree(s.d));
    }
    if s.h0 < 0 || s.h1 < 0 {
        return Err(NegativeCohomology);
    }
    if s.h0 - s.h1 != s.d - c.g + 1 {
        return Err(RiemannRoch {
            lhs: s.h0 - s.h1,
            rhs: s.d - c.g + 1,
        });
    }
    if s.dim_v < 2 {
        return Err(DimVTooSmall(s.dim_v));
    }
    if s.dim_v > s.h0 {
        return Err(DimVExceedsH0);
    }
    if s.flags.complete != (s.dim_v == s.h0) {
        return Err(CompleteFlagMismatch);
    }
    if s.flags.computes_clifford && (s.d - 2 * (s.h0 - 1) != c.cliff || s.h0 < 2 || s.h1 < 2) {
        return Err(ComputesCliffordInconsistent);
    }
    if s.flags.is_canonical_twist_deg2 && (s.d != 2 * c.g || s.h1 != 0) {
        return Err(CanonicalTwistInconsistent);
    }
    Ok(())
}

/// Checks every relation among the invariants and returns the first
/// violation.
pub fn validate(c: &CurveInvariants, s: &SeriesInvariants) -> Result<(), ValidationError> {
    validate_curve(c)?;
    validate_series(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(g: i64, gamma: i64, cliff: i64, hyperelliptic: bool) -> CurveInvariants {
        CurveInvariants {
            g,
            gamma,
            cliff,
            hyperelliptic,
        }
    }

    fn series(d: i64, h0: i64, h1: i64, dim_v: i64) -> SeriesInvariants {
        SeriesInvariants {
            d,
            h0,
            h1,
            dim_v,
            flags: SeriesFlags {
                complete: dim_v == h0,
                globally_generated: true,
                ..Default::default()
            },
        }
    }

    #[test]
    fn genus_two_ok() {
        assert_eq!(validate(&curve(2, 2, 0, true), &series(5, 4, 0, 4)), Ok(()));
    }

    #[test]
    fn clifford_above_gonality() {
        assert_eq!(
            validate(&curve(4, 2, 1, true), &series(6, 4, 1, 4)),
            Err(ValidationError::CliffordAboveGonality)
        );
    }

    #[test]
    fn riemann_roch() {
        assert_eq!(
            validate(&curve(4, 3, 1, false), &series(7, 4, 1, 4)),
            Err(ValidationError::RiemannRoch { lhs: 3, rhs: 4 })
        );
    }

    #[test]
    fn named_errors_are_distinct() {
        let c = curve(4, 3, 1, false);
        assert_eq!(validate(&curve(1, 2, 0, true), &series(1, 1, 0, 1)), Err(ValidationError::GenusTooSmall(1)));
        assert_eq!(validate(&curve(5, 5, 1, false), &series(8, 4, 0, 4)), Err(ValidationError::CliffordBelowGonality));
        assert_eq!(validate(&curve(4, 2, 0, false), &series(6, 4, 1, 4)), Err(ValidationError::HyperellipticMismatch));
        assert_eq!(validate(&c, &series(7, 4, 0, 5)), Err(ValidationError::DimVExceedsH0));
        let mut s = series(7, 4, 0, 3);
        s.flags.complete = true;
        assert_eq!(validate(&c, &s), Err(ValidationError::CompleteFlagMismatch));
        let mut s = series(7, 4, 0, 4);
        s.flags.computes_clifford = true;
        assert_eq!(validate(&c, &s), Err(ValidationError::ComputesCliffordInconsistent));
    }

    #[test]
    fn json_shape() {
        let inv: Invariants = serde_json::from_str(
            r#"{"curve":{"g":10,"gamma":6,"cliff":4,"hyperelliptic":false},
                "series":{"d":18,"h0":10,"h1":1,"dimV":7,"flags":{"general_subspace":true}}}"#,
        )
        .unwrap();
        assert_eq!(inv.series.codim(), 3);
        assert!(inv.series.is_canonical(&inv.curve));
        assert_eq!(inv.series.slope(), rational(-3, 1));
    }
}
