use serde::Serialize;

use super::certificate::{Certificate, Check};
use super::invariants::{validate, CurveInvariants, SeriesInvariants};
use super::verdicts::{close_chain, Notion, Status, VerdictSet};
use crate::error::Result;
use crate::scalar::{format_rational, rational};

pub const RULE_IDS: [&str; 8] = ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8"];

/// A rule that did not fire, with its first failing hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unfired {
    pub rule: String,
    pub failing: Check,
}

/// A literal evaluation that disagrees with a worked example built on the
/// same statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub rule: String,
    pub case: u8,
    pub literal: String,
    pub alternative: String,
    pub notes: Vec<String>,
}

pub(crate) struct RuleEval {
    pub checks: Vec<Check>,
    pub contribution: Vec<(Notion, Status)>,
    pub equivalence: bool,
    pub notes: Vec<String>,
}

impl RuleEval {
    fn new(checks: Vec<Check>) -> Self {
        RuleEval {
            checks,
            contribution: Vec::new(),
            equivalence: false,
            notes: Vec::new(),
        }
    }

    fn fires(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn clifford_bound(c: &CurveInvariants, s: &SeriesInvariants) -> Check {
    Check::le("d − 2(h0 − 1) ≤ cliff", s.d - 2 * (s.h0 - 1), c.cliff)
}

/// Appends the exception checks `ω(D)` / hyperelliptic with
/// `d = 2(h0 − 1)` and returns whether an exception holds.
fn exceptions(c: &CurveInvariants, s: &SeriesInvariants, checks: &mut Vec<Check>) -> bool {
    let twist = s.flags.is_canonical_twist_deg2;
    let hyp = c.hyperelliptic && s.d == 2 * (s.h0 - 1);
    if twist {
        checks.push(Check::flag("exception (i): L ≅ ω(D), deg D = 2", true));
    }
    if hyp {
        checks.push(Check::eq("exception (ii): hyperelliptic and d = 2(h0 − 1)", s.d, 2 * (s.h0 - 1)));
    }
    if !(twist || hyp) {
        checks.push(Check::flag("no exception: L ≇ ω(D) with deg D = 2", true));
        checks.push(Check::flag(
            "no exception: not (hyperelliptic and d = 2(h0 − 1))",
            true,
        ));
    }
    twist || hyp
}

fn r1(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::flag("complete", s.flags.complete),
        Check::flag("globally generated", s.flags.globally_generated),
        clifford_bound(c, s),
    ]);
    if e.fires() {
        let exc = exceptions(c, s, &mut e.checks);
        let st = if exc { Status::StrictlySemistable } else { Status::Stable };
        e.contribution.push((Notion::Linear, st));
    }
    e
}

fn r2(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::flag("complete", s.flags.complete),
        Check::flag("globally generated", s.flags.globally_generated),
        clifford_bound(c, s),
    ]);
    e.equivalence = true;
    e
}

fn r3(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::flag("complete", s.flags.complete),
        Check::flag("globally generated", s.flags.globally_generated),
        clifford_bound(c, s),
    ]);
    if e.fires() {
        let exc = exceptions(c, s, &mut e.checks);
        e.contribution
            .push((Notion::Slope, if exc { Status::Semistable } else { Status::Stable }));
    }
    e
}

fn r4(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::flag("complete", s.flags.complete),
        Check::flag("globally generated", s.flags.globally_generated),
        Check::ge("d ≥ 2g − cliff", s.d, 2 * c.g - c.cliff),
    ]);
    if e.fires() {
        let exc = exceptions(c, s, &mut e.checks);
        e.contribution
            .push((Notion::Slope, if exc { Status::Semistable } else { Status::Stable }));
    }
    e
}

fn r5(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::flag("complete", s.flags.complete),
        Check::flag("computes the Clifford index", s.flags.computes_clifford),
    ]);
    if e.fires() {
        if c.hyperelliptic {
            e.checks.push(Check::flag("exception: hyperelliptic", true));
            e.contribution.push((Notion::Slope, Status::Semistable));
        } else {
            e.checks.push(Check::flag("no exception: not hyperelliptic", true));
            e.contribution.push((Notion::Slope, Status::Stable));
        }
    }
    e
}

/// Case 3 of R6: `codim < h1 + g/(dimV − k)` with `k = 2` literally.
fn case3(c: &CurveInvariants, s: &SeriesInvariants, k: i64) -> Option<(bool, String)> {
    let den = s.dim_v - k;
    if den <= 0 {
        return None;
    }
    let rhs = rational(s.h1, 1) + rational(c.g, den);
    let holds = rational(s.codim(), 1) < rhs;
    Some((
        holds,
        format!(
            "{} < {} + {}/{} = {}",
            s.codim(),
            s.h1,
            c.g,
            den,
            format_rational(&rhs)
        ),
    ))
}

fn r6(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::flag("globally generated", s.flags.globally_generated),
        Check::le("d − 2(dimV − 1) ≤ cliff", s.d - 2 * (s.dim_v - 1), c.cliff),
    ]);
    let mut cases = Vec::new();
    cases.push(Check::flag("case 1: complete", s.flags.complete));
    cases.push(Check::le("case 2: d ≤ 2g − cliff + 1", s.d, 2 * c.g - c.cliff + 1));
    match case3(c, s, 2) {
        Some((holds, evaluated)) => cases.push(Check {
            relation: "case 3: codim < h1 + g/(dimV − 2)".into(),
            evaluated,
            holds,
        }),
        None => e.notes.push("case 3 undefined for dimV ≤ 2".into()),
    }
    let c4 = s.d >= 2 * c.g && 2 * s.codim() <= s.d - 2 * c.g;
    cases.push(Check {
        relation: "case 4: d ≥ 2g and codim ≤ (d − 2g)/2".into(),
        evaluated: format!("{} ≥ {} and {} ≤ ({} − {})/2", s.d, 2 * c.g, s.codim(), s.d, 2 * c.g),
        holds: c4,
    });
    match cases.iter().position(|k| k.holds) {
        Some(_) => {
            for k in cases {
                if k.holds {
                    e.checks.push(k);
                } else {
                    e.notes.push(format!("{} fails: {}", k.relation, k.evaluated));
                }
            }
        }
        None => e.checks.push(Check {
            relation: "some case 1–4 holds".into(),
            evaluated: "none".into(),
            holds: false,
        }),
    }
    e.equivalence = true;
    e
}

fn r7(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let mut e = RuleEval::new(vec![
        Check::ge("cliff ≥ 4", c.cliff, 4),
        Check::flag("canonical: d = 2g − 2 and h1 = 1", s.is_canonical(c)),
        Check::flag("general subspace", s.flags.general_subspace),
        Check::le("codim ≤ 2", s.codim(), 2),
    ]);
    if e.fires() {
        e.contribution.push((Notion::Slope, Status::Semistable));
    }
    e
}

fn r8(c: &CurveInvariants, s: &SeriesInvariants) -> RuleEval {
    let r = s.r();
    let mut e = RuleEval::new(vec![
        Check::flag("induces a birational morphism", s.flags.birational),
        Check::le("d ≤ 2r + cliff", s.d, 2 * r + c.cliff),
        Check::le("codim ≤ h1", s.codim(), s.h1),
    ]);
    if e.fires() {
        if s.d == 2 * r {
            e.checks.push(Check::eq("d = 2r", s.d, 2 * r));
            e.contribution.push((Notion::Cohomological, Status::StrictlySemistable));
        } else {
            e.checks.push(Check::ne("d ≠ 2r", s.d, 2 * r));
            e.contribution.push((Notion::Cohomological, Status::Stable));
        }
    }
    e
}

pub(crate) fn evaluate(rule: &str, c: &CurveInvariants, s: &SeriesInvariants) -> Option<RuleEval> {
    Some(match rule {
        "R1" => r1(c, s),
        "R2" => r2(c, s),
        "R3" => r3(c, s),
        "R4" => r4(c, s),
        "R5" => r5(c, s),
        "R6" => r6(c, s),
        "R7" => r7(c, s),
        "R8" => r8(c, s),
        _ => return None,
    })
}

pub(crate) fn certificate_for(rule: &str, e: RuleEval) -> Certificate {
    let mut cert = Certificate::new(rule, e.contribution, e.equivalence, e.checks);
    cert.notes = e.notes;
    cert
}

/// Literal R6 case 3 fails while the reading with `g/(dimV − 3)` holds.
pub fn case3_discrepancy(c: &CurveInvariants, s: &SeriesInvariants) -> Option<Discrepancy> {
    let (literal_holds, literal) = case3(c, s, 2)?;
    let (alt_holds, alternative) = case3(c, s, 3)?;
    if literal_holds || !alt_holds {
        return None;
    }
    let mut notes = Vec::new();
    let standing = s.d - 2 * (s.dim_v - 1);
    if standing > c.cliff {
        notes.push(format!("standing hypothesis d − 2(dimV − 1) ≤ cliff also fails: {standing} ≤ {}", c.cliff));
    }
    Some(Discrepancy {
        rule: "R6".into(),
        case: 3,
        literal: format!("{literal} fails"),
        alternative: format!("{alternative} holds"),
        notes,
    })
}

/// The outcome of running every rule on a validated tuple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineReport {
    #[serde(with = "crate::scalar::serde_rational")]
    pub slope: crate::Rational,
    pub verdicts: VerdictSet,
    pub unfired: Vec<Unfired>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
}

impl EngineReport {
    pub fn status(&self, n: Notion) -> Status {
        self.verdicts.status(n)
    }

    pub fn fired(&self, rule: &str) -> bool {
        self.verdicts.certificates.iter().any(|c| c.rule == rule)
    }

    /// Every notion decided.
    pub fn is_decided(&self) -> bool {
        Notion::ALL.iter().all(|&n| self.status(n) != Status::Unknown)
    }
}

/// Validates the tuple, fires every applicable rule and closes the result
/// under the chain of implications.
pub fn apply_rules(c: &CurveInvariants, s: &SeriesInvariants) -> Result<EngineReport> {
    validate(c, s)?;
    let mut v = VerdictSet::default();
    let mut unfired = Vec::new();
    for id in RULE_IDS {
        let e = evaluate(id, c, s).expect("known rule");
        if !e.fires() {
            let failing = e.checks.iter().find(|k| !k.holds).cloned().expect("a failing check");
            unfired.push(Unfired {
                rule: id.to_string(),
                failing,
            });
            continue;
        }
        for (n, st) in &e.contribution {
            v.assert_status(*n, *st, id)?;
        }
        if e.equivalence {
            v.linear_slope_equivalence.push(id.to_string());
        }
        v.certificates.push(certificate_for(id, e));
    }
    let verdicts = close_chain(&v)?;
    Ok(EngineReport {
        slope: s.slope(),
        verdicts,
        unfired,
        discrepancies: case3_discrepancy(c, s).into_iter().collect(),
    })
}

/// Re-evaluates a certificate's checklist against the inputs.
pub fn replay_certificate(c: &CurveInvariants, s: &SeriesInvariants, cert: &Certificate) -> bool {
    if cert.rule == "R9" {
        return cert.checklist.is_empty();
    }
    let Some(e) = evaluate(&cert.rule, c, s) else {
        return false;
    };
    e.fires() && certificate_for(&cert.rule, e) == *cert
}
