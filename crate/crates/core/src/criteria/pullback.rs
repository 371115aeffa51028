use serde::Serialize;

use super::invariants::{SeriesFlags, SeriesInvariants};
use super::verdicts::{close_chain, Notion, Status, VerdictSet};
use crate::error::{Error, Result};

/// The pulled-back series `(β*L, β*V)` under a finite map of degree `b`.
/// Upstairs cohomology depends on the cover, so only a lower bound on
/// `h⁰` is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PulledSeries {
    pub b: i64,
    pub d: i64,
    #[serde(rename = "dimV")]
    pub dim_v: i64,
    pub h0_at_least: i64,
    pub flags: SeriesFlags,
}

/// Carries series numbers and verdicts through a finite cover of degree
/// `b ≥ 2`: linear verdicts unchanged, slope instability kept, slope
/// semistability kept only for cohomologically stable bundles.
pub fn pullback_invariants(b: i64, s: &SeriesInvariants, v: &VerdictSet) -> Result<(PulledSeries, VerdictSet)> {
    if b < 2 {
        return Err(Error::Precondition(format!("cover degree must be at least 2, got {b}")));
    }
    let pulled = PulledSeries {
        b,
        d: b * s.d,
        dim_v: s.dim_v,
        h0_at_least: s.h0,
        flags: SeriesFlags {
            globally_generated: s.flags.globally_generated,
            ..SeriesFlags::default()
        },
    };
    let source = format!("pullback of degree {b}");
    let mut up = VerdictSet::default();
    up.assert_status(Notion::Linear, v.status(Notion::Linear), &source)?;
    let slope = match (v.status(Notion::Slope), v.status(Notion::Cohomological)) {
        (Status::Unstable, _) => Status::Unstable,
        (_, Status::Stable) => Status::Semistable,
        _ => Status::Unknown,
    };
    up.assert_status(Notion::Slope, slope, &source)?;
    Ok((pulled, close_chain(&up)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series() -> SeriesInvariants {
        SeriesInvariants {
            d: 5,
            h0: 3,
            h1: 0,
            dim_v: 3,
            flags: SeriesFlags {
                complete: true,
                globally_generated: true,
                ..Default::default()
            },
        }
    }

    fn verdicts(l: Status, s: Status, c: Status) -> VerdictSet {
        VerdictSet::from_statuses(l, s, c, "input").unwrap()
    }

    #[test]
    fn linear_stable_carried() {
        let (p, v) = pullback_invariants(2, &series(), &verdicts(Status::Stable, Status::Unknown, Status::Unknown)).unwrap();
        assert_eq!(p.d, 10);
        assert_eq!(p.dim_v, 3);
        assert_eq!(v.status(Notion::Linear), Status::Stable);
    }

    #[test]
    fn slope_unstable_carried() {
        let (_, v) = pullback_invariants(3, &series(), &verdicts(Status::Stable, Status::Unstable, Status::Unknown)).unwrap();
        assert_eq!(v.status(Notion::Slope), Status::Unstable);
        assert_eq!(v.status(Notion::Linear), Status::Stable);
    }

    #[test]
    fn slope_stable_becomes_unknown() {
        let (_, v) = pullback_invariants(2, &series(), &verdicts(Status::Stable, Status::Stable, Status::Unknown)).unwrap();
        assert_eq!(v.status(Notion::Slope), Status::Unknown);
    }

    #[test]
    fn cohomologically_stable_gives_semistable() {
        let (_, v) = pullback_invariants(2, &series(), &verdicts(Status::Stable, Status::Stable, Status::Stable)).unwrap();
        assert_eq!(v.status(Notion::Slope), Status::Semistable);
    }

    #[test]
    fn degree_one_rejected() {
        assert!(pullback_invariants(1, &series(), &VerdictSet::default()).is_err());
    }
}
