use serde::Serialize;

use super::verdicts::{Notion, Status};

/// Identifier, citation label and verbatim anchor of each rule.
pub const RULES: [(&str, &str, &str); 9] = [
    ("R1", "Prop 3.4", "Then L is linearly semistable. It is linearly stable unless"),
    ("R2", "Thm 5.1", "linearly (semi)stable if and only if M_L is (semi)stable"),
    ("R3", "Thm 5.2", "it is strictly semistable only in one of the following cases"),
    ("R4", "Cor 5.3", "deg L ⩾ 2g − Cliff(C)"),
    ("R5", "Cor 5.4", "computes the Clifford index of C"),
    ("R6", "Thm 6.2", "codim < h^1(L)+g/(dim V−2)"),
    ("R7", "Prop 6.6", "general subspace of codimension smaller than or equal to 2"),
    ("R8", "Thm 7.2", "cohomologically semistable. It is strictly stable unless d=2r"),
    ("R9", "chain (1)", "which hold for semistability as well"),
];

pub fn rule_info(id: &str) -> Option<(&'static str, &'static str)> {
    RULES.iter().find(|(r, _, _)| *r == id).map(|(_, c, q)| (*c, *q))
}

/// One evaluated hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub relation: String,
    pub evaluated: String,
    pub holds: bool,
}

impl Check {
    pub fn flag(relation: &str, value: bool) -> Self {
        Check {
            relation: relation.to_string(),
            evaluated: value.to_string(),
            holds: value,
        }
    }

    pub fn le(relation: &str, lhs: i64, rhs: i64) -> Self {
        Check {
            relation: relation.to_string(),
            evaluated: format!("{lhs} ≤ {rhs}"),
            holds: lhs <= rhs,
        }
    }

    pub fn ge(relation: &str, lhs: i64, rhs: i64) -> Self {
        Check {
            relation: relation.to_string(),
            evaluated: format!("{lhs} ≥ {rhs}"),
            holds: lhs >= rhs,
        }
    }

    pub fn eq(relation: &str, lhs: i64, rhs: i64) -> Self {
        Check {
            relation: relation.to_string(),
            evaluated: format!("{lhs} = {rhs}"),
            holds: lhs == rhs,
        }
    }

    pub fn ne(relation: &str, lhs: i64, rhs: i64) -> Self {
        Check {
            relation: relation.to_string(),
            evaluated: format!("{lhs} ≠ {rhs}"),
            holds: lhs != rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub notion: Notion,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rule: String,
    pub cite: String,
    pub quote: String,
    pub contribution: Vec<Contribution>,
    /// The rule makes linear and slope (semi)stability equivalent.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub equivalence: bool,
    pub checklist: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(rule: &str, contribution: Vec<(Notion, Status)>, equivalence: bool, checklist: Vec<Check>) -> Self {
        let (cite, quote) = rule_info(rule).expect("known rule");
        Certificate {
            rule: rule.to_string(),
            cite: cite.to_string(),
            quote: quote.to_string(),
            contribution: contribution
                .into_iter()
                .map(|(notion, status)| Contribution { notion, status })
                .collect(),
            equivalence,
            checklist,
            notes: Vec::new(),
        }
    }

    pub(crate) fn chain(contribution: Vec<(Notion, Status)>) -> Self {
        Certificate::new("R9", contribution, false, Vec::new())
    }

    pub fn all_hold(&self) -> bool {
        self.checklist.iter().all(|c| c.holds)
    }
}
