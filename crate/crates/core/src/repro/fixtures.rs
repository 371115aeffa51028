//! Golden examples with their expected verdicts.

use serde::{Deserialize, Serialize};

use crate::criteria::{apply_rules, Invariants, Notion, Status};
use crate::dsb::{split_slope_verdict, splitting_type, SlopeVerdict};
use crate::error::{Error, Result};
use crate::linear::{analyze_singularities, decompose, linear_verdict, LinStatus, PlaneMap};
use crate::scalar::format_rational;
use crate::LinearSeriesP1;

const GOLDEN: &str = include_str!("../../fixtures/golden.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureInput {
    Series(LinearSeriesP1),
    Invariants(Invariants),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twists: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<LinStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_verdict: Option<SlopeVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_multiplicity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_linear: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_slope: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub input: FixtureInput,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of recomputing a fixture.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub computed: Expected,
    pub mismatches: Vec<String>,
}

impl FixtureCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn fixtures() -> Result<Vec<Fixture>> {
    serde_json::from_str(GOLDEN).map_err(|e| Error::Internal(format!("golden fixtures: {e}")))
}

pub fn fixture(name: &str) -> Result<Fixture> {
    fixtures()?
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Precondition(format!("no fixture named {name}")))
}

fn compute(input: &FixtureInput) -> Result<Expected> {
    match input {
        FixtureInput::Series(v) => {
            let st = splitting_type(v)?;
            let max_multiplicity = if v.dim() == 3 {
                let phi = PlaneMap::from_series(v)?;
                if decompose(&phi)?.is_birational() {
                    Some(analyze_singularities(&phi)?.report.max_multiplicity)
                } else {
                    None
                }
            } else {
                None
            };
            Ok(Expected {
                twists: Some(st.twists().to_vec()),
                linear: Some(linear_verdict(v)?.status),
                slope_verdict: Some(split_slope_verdict(&st)),
                max_multiplicity,
                ..Expected::default()
            })
        }
        FixtureInput::Invariants(inv) => {
            let rep = apply_rules(&inv.curve, &inv.series)?;
            Ok(Expected {
                slope: Some(format_rational(&rep.slope)),
                engine_linear: Some(rep.status(Notion::Linear)),
                engine_slope: Some(rep.status(Notion::Slope)),
                discrepancy: Some(!rep.discrepancies.is_empty()),
                ..Expected::default()
            })
        }
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(field: &str, want: &Option<T>, got: &Option<T>, out: &mut Vec<String>) {
    if let Some(w) = want {
        if got.as_ref() != Some(w) {
            out.push(format!("{field}: expected {w:?}, computed {got:?}"));
        }
    }
}

/// Recomputes every expected field that the fixture records.
pub fn check_fixture(f: &Fixture) -> Result<FixtureCheck> {
    let computed = compute(&f.input)?;
    let e = &f.expected;
    let mut m = Vec::new();
    compare("twists", &e.twists, &computed.twists, &mut m);
    compare("linear", &e.linear, &computed.linear, &mut m);
    compare("slope_verdict", &e.slope_verdict, &computed.slope_verdict, &mut m);
    compare("max_multiplicity", &e.max_multiplicity, &computed.max_multiplicity, &mut m);
    compare("slope", &e.slope, &computed.slope, &mut m);
    compare("engine_linear", &e.engine_linear, &computed.engine_linear, &mut m);
    compare("engine_slope", &e.engine_slope, &computed.engine_slope, &mut m);
    compare("discrepancy", &e.discrepancy, &computed.discrepancy, &mut m);
    Ok(FixtureCheck {
        name: f.name.clone(),
        computed,
        mismatches: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_parses() {
        let all = fixtures().unwrap();
        assert!(all.len() >= 15);
        assert!(fixture("nodal_cubic").is_ok());
        assert!(fixture("missing").is_err());
    }

    #[test]
    fn golden_reproduces() {
        for f in fixtures().unwrap() {
            let c = check_fixture(&f).unwrap();
            assert!(c.passed(), "{}: {:?}", c.name, c.mismatches);
        }
    }
}
