//! Majoritarian assignment rules for house allocation.
//!
//! `n` agents hold strict preferences over `n` houses and every bijection
//! agents -> houses is an assignment. Two assignments are compared by
//! majority: each agent votes for the one giving it the better house. This
//! crate builds the resulting majority graph over all `n!` assignments and
//! evaluates the rules defined on it: popularity and its relatives, the top
//! and bottom cycle (by brute force and by a closed-form case analysis for
//! `n >= 5`), three uncovered sets, Pareto optimality, rank-maximal and
//! generous assignments. It can also recover every profile that induces a
//! given majority graph, and ships an enumeration and sampling harness for
//! statistics over all small profiles.

pub mod assignment;
pub mod bits;
pub mod covering;
pub mod error;
pub mod experiments;
pub mod majority;
pub mod pareto;
pub mod profile;
pub mod reconstruct;
pub mod rules;
pub mod topcycle;

pub use assignment::{Assignment, AssignmentIndexer, PriorityOrder, Universe, DEFAULT_BRUTE_LIMIT, MAX_BRUTE};
pub use bits::{BitMatrix, BitSet};
pub use covering::CoveringVariant;
pub use error::{Error, Result};
pub use majority::{MajorityMatrix, MajorityOutcome, Verdict};
pub use profile::{AgentId, HouseId, PreferenceOrder, Profile};
pub use topcycle::TcDescription;
