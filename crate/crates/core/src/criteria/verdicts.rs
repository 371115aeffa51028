use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use super::certificate::Certificate;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Notion {
    Linear,
    Slope,
    Cohomological,
}

impl Notion {
    pub const ALL: [Notion; 3] = [Notion::Linear, Notion::Slope, Notion::Cohomological];
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notion::Linear => "linear",
            Notion::Slope => "slope",
            Notion::Cohomological => "cohomological",
        })
    }
}

/// `semistable` means at least semistable; `strictly_semistable` means
/// semistable and not stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Stable,
    StrictlySemistable,
    Semistable,
    Unstable,
    Unknown,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Stable,
        Status::StrictlySemistable,
        Status::Semistable,
        Status::Unstable,
        Status::Unknown,
    ];

    /// Values of (stable, semistable) the status asserts.
    fn facts(self) -> (Option<bool>, Option<bool>) {
        match self {
            Status::Stable => (Some(true), None),
            Status::StrictlySemistable => (Some(false), Some(true)),
            Status::Semistable => (None, Some(true)),
            Status::Unstable => (None, Some(false)),
            Status::Unknown => (None, None),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub value: bool,
    pub source: String,
}

/// What is known about one notion: whether it is stable and whether it is
/// semistable, each with the rule that established it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Knowledge {
    pub stable: Option<Fact>,
    pub semistable: Option<Fact>,
}

impl Knowledge {
    pub fn status(&self) -> Status {
        let st = self.stable.as_ref().map(|f| f.value);
        let ss = self.semistable.as_ref().map(|f| f.value);
        match (st, ss) {
            (Some(true), _) => Status::Stable,
            (_, Some(false)) => Status::Unstable,
            (Some(false), Some(true)) => Status::StrictlySemistable,
            (None, Some(true)) => Status::Semistable,
            _ => Status::Unknown,
        }
    }
}

impl Serialize for Knowledge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.status().serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Stable,
    Semistable,
}

/// Statuses for the three notions with the certificates behind them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerdictSet {
    pub linear: Knowledge,
    pub slope: Knowledge,
    pub cohomological: Knowledge,
    /// Rules that made linear and slope (semi)stability equivalent.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub linear_slope_equivalence: Vec<String>,
    pub certificates: Vec<Certificate>,
}

impl VerdictSet {
    pub fn from_statuses(linear: Status, slope: Status, cohomological: Status, source: &str) -> Result<Self> {
        let mut v = VerdictSet::default();
        v.assert_status(Notion::Linear, linear, source)?;
        v.assert_status(Notion::Slope, slope, source)?;
        v.assert_status(Notion::Cohomological, cohomological, source)?;
        Ok(v)
    }

    pub fn get(&self, n: Notion) -> &Knowledge {
        match n {
            Notion::Linear => &self.linear,
            Notion::Slope => &self.slope,
            Notion::Cohomological => &self.cohomological,
        }
    }

    fn get_mut(&mut self, n: Notion) -> &mut Knowledge {
        match n {
            Notion::Linear => &mut self.linear,
            Notion::Slope => &mut self.slope,
            Notion::Cohomological => &mut self.cohomological,
        }
    }

    pub fn status(&self, n: Notion) -> Status {
        self.get(n).status()
    }

    /// Records what `status` asserts about `n`, failing on a clash with
    /// what is already known.
    pub fn assert_status(&mut self, n: Notion, status: Status, source: &str) -> Result<()> {
        let (st, ss) = status.facts();
        if let Some(v) = st {
            self.set(n, Field::Stable, v, source)?;
        }
        if let Some(v) = ss {
            self.set(n, Field::Semistable, v, source)?;
        }
        Ok(())
    }

    /// Returns whether the fact is new.
    fn set(&mut self, n: Notion, field: Field, value: bool, source: &str) -> Result<bool> {
        let k = self.get_mut(n);
        let slot = match field {
            Field::Stable => &mut k.stable,
            Field::Semistable => &mut k.semistable,
        };
        match slot {
            Some(f) if f.value == value => Ok(false),
            Some(f) => {
                let word = |b: bool, field: Field| match (field, b) {
                    (Field::Stable, true) => "stable",
                    (Field::Stable, false) => "not stable",
                    (Field::Semistable, true) => "semistable",
                    (Field::Semistable, false) => "unstable",
                };
                Err(Error::ContradictoryVerdicts {
                    notion: n.to_string(),
                    first: format!("{} ({})", word(f.value, field), f.source),
                    second: format!("{} ({source})", word(value, field)),
                })
            }
            None => {
                *slot = Some(Fact {
                    value,
                    source: source.to_string(),
                });
                Ok(true)
            }
        }
    }

    fn value(&self, n: Notion, field: Field) -> Option<bool> {
        let k = self.get(n);
        match field {
            Field::Stable => k.stable.as_ref().map(|f| f.value),
            Field::Semistable => k.semistable.as_ref().map(|f| f.value),
        }
    }
}

const CHAIN: &str = "R9";

/// Implications `(from, field, value) ⇒ (to, field, value)` of the chain
/// cohomological ⇒ slope ⇒ linear, for stability and semistability, with
/// cohomological and slope semistability equivalent, plus contrapositives.
fn chain_edges() -> Vec<(Notion, Field, bool, Notion, Field, bool)> {
    use Field::*;
    use Notion::*;
    let mut e = Vec::new();
    for n in Notion::ALL {
        e.push((n, Stable, true, n, Semistable, true));
        e.push((n, Semistable, false, n, Stable, false));
    }
    for (a, b) in [(Cohomological, Slope), (Slope, Linear)] {
        for f in [Stable, Semistable] {
            e.push((a, f, true, b, f, true));
            e.push((b, f, false, a, f, false));
        }
    }
    e.push((Slope, Semistable, true, Cohomological, Semistable, true));
    e.push((Cohomological, Semistable, false, Slope, Semistable, false));
    e
}

/// Closes a verdict set under the chain of implications and any recorded
/// linear ⇔ slope equivalences. Idempotent; fails on contradictions.
pub fn close_chain(v: &VerdictSet) -> Result<VerdictSet> {
    let mut out = v.clone();
    let mut edges: Vec<(Notion, Field, bool, Notion, Field, bool, String)> =
        chain_edges().into_iter().map(|(a, f, x, b, g, y)| (a, f, x, b, g, y, CHAIN.to_string())).collect();
    if let Some(src) = out.linear_slope_equivalence.first().cloned() {
        for f in [Field::Stable, Field::Semistable] {
            for x in [true, false] {
                edges.push((Notion::Linear, f, x, Notion::Slope, f, x, src.clone()));
                edges.push((Notion::Slope, f, x, Notion::Linear, f, x, src.clone()));
            }
        }
    }
    let mut derived = Vec::new();
    loop {
        let mut changed = false;
        for (a, f, x, b, g, y, src) in &edges {
            if out.value(*a, *f) == Some(*x) && out.set(*b, *g, *y, src)? {
                changed = true;
                if src == CHAIN {
                    derived.push((*b, out.status(*b)));
                }
            }
        }
        if !changed {
            break;
        }
    }
    if !derived.is_empty() {
        let mut contribution: Vec<(Notion, Status)> = Vec::new();
        for (n, _) in derived {
            if !contribution.iter().any(|(m, _)| *m == n) {
                contribution.push((n, out.status(n)));
            }
        }
        out.certificates.push(Certificate::chain(contribution));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(l: Status, s: Status, c: Status) -> VerdictSet {
        VerdictSet::from_statuses(l, s, c, "input").unwrap()
    }

    #[test]
    fn cohomological_stable_propagates() {
        let v = close_chain(&set(Status::Unknown, Status::Unknown, Status::Stable)).unwrap();
        for n in Notion::ALL {
            assert_eq!(v.status(n), Status::Stable);
        }
    }

    #[test]
    fn slope_semistable_propagates() {
        let v = close_chain(&set(Status::Unknown, Status::Semistable, Status::Unknown)).unwrap();
        assert_eq!(v.status(Notion::Cohomological), Status::Semistable);
        assert_eq!(v.status(Notion::Linear), Status::Semistable);
    }

    #[test]
    fn empty_stays_empty() {
        let v = close_chain(&VerdictSet::default()).unwrap();
        assert_eq!(v, VerdictSet::default());
    }

    #[test]
    fn idempotent() {
        let v = close_chain(&set(Status::Unstable, Status::Unknown, Status::Unknown)).unwrap();
        assert_eq!(v.status(Notion::Slope), Status::Unstable);
        assert_eq!(close_chain(&v).unwrap(), v);
    }

    #[test]
    fn contradiction_detected() {
        let v = set(Status::Unstable, Status::Stable, Status::Unknown);
        assert!(matches!(close_chain(&v), Err(Error::ContradictoryVerdicts { .. })));
    }

    #[test]
    fn linear_stable_slope_unstable_is_consistent() {
        let v = close_chain(&set(Status::Stable, Status::Unstable, Status::Unknown)).unwrap();
        assert_eq!(v.status(Notion::Cohomological), Status::Unstable);
    }

    #[test]
    fn equivalence_transfers() {
        let mut v = set(Status::StrictlySemistable, Status::Unknown, Status::Unknown);
        v.linear_slope_equivalence.push("R2".into());
        let v = close_chain(&v).unwrap();
        assert_eq!(v.status(Notion::Slope), Status::StrictlySemistable);
        assert_eq!(v.status(Notion::Cohomological), Status::StrictlySemistable);
    }
}
