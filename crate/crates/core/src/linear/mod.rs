//! Linear stability of plane maps and base-divisor searches.

pub mod chordal;
pub mod clifford;
pub mod decomposition;
pub mod plane;
pub mod search;
pub mod singular;
pub mod verdict;

pub use decomposition::{decompose, divided_minor_gcd, divided_minors, Decomposition};
pub use plane::{fiber_form, lines_through, multiplicity_at_point, normalize_point, point, same_point, sampled_fiber_length, PlaneMap, PlanePoint};
pub use singular::{
    analyze_singularities, node_certificate, Completeness, FiberDescriptor, FiberEntry, MultiplicityReport,
    NodeCertificate, SingularAnalysis,
};
pub use search::{base_divisor_search, linear_verdict, SearchRecord, SEARCH_BUDGET};
pub use verdict::{plane_criterion, replay_witness, LinStabVerdict, LinStatus, Witness};
pub use chordal::{chordal_form, ChordalForm};
pub use clifford::clifford_linear_rule;
