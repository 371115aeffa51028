use super::verdict::{LinStabVerdict, LinStatus};
use crate::criteria::rules::{certificate_for, evaluate};
use crate::criteria::{validate, CurveInvariants, SeriesInvariants, Status};
use crate::error::{Error, Result};

/// Linear (semi)stability of a complete, globally generated series with
/// `d − 2(h⁰ − 1) ≤ Cliff`.
pub fn clifford_linear_rule(c: &CurveInvariants, s: &SeriesInvariants) -> Result<LinStabVerdict> {
    validate(c, s)?;
    let e = evaluate("R1", c, s).expect("known rule");
    if let Some(k) = e.checks.iter().find(|k| !k.holds) {
        return Err(Error::RuleNotApplicable(format!("{} fails: {}", k.relation, k.evaluated)));
    }
    let status = match e.contribution.first().map(|(_, st)| *st) {
        Some(Status::Stable) => LinStatus::Stable,
        Some(Status::StrictlySemistable) => LinStatus::StrictlySemistable,
        other => return Err(Error::Internal(format!("unexpected contribution {other:?}"))),
    };
    Ok(LinStabVerdict {
        status,
        ratio: None,
        ratio_lower_bound: None,
        witness: None,
        complete: true,
        d: s.d as usize,
        r: s.r() as usize,
        search: None,
        certificate: Some(certificate_for("R1", e)),
    })
}
