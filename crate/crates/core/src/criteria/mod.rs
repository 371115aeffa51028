//! Numerical rules relating linear, slope and cohomological stability of
//! dual span bundles on curves of genus at least two.

pub mod certificate;
pub mod invariants;
pub mod pullback;
pub mod rules;
pub mod verdicts;

pub use certificate::{rule_info, Certificate, Check, Contribution, RULES};
pub use invariants::{validate, CurveInvariants, Invariants, SeriesFlags, SeriesInvariants};
pub use pullback::{pullback_invariants, PulledSeries};
pub use rules::{apply_rules, case3_discrepancy, replay_certificate, Discrepancy, EngineReport, Unfired, RULE_IDS};
pub use verdicts::{close_chain, Fact, Knowledge, Notion, Status, VerdictSet};
