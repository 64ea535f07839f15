//! Membership functions, Mamdani inference and score decomposition.

mod decompose;
mod inference;
mod membership;
mod universe;

pub use decompose::{decompose_score, Decomposition};
pub use inference::{aggregate, defuzzify, Diagnosis, FuzzySet, InferenceEngine, DEFAULT_ACTIVATION_FLOOR};
pub use membership::{build_family, membership, FamilyKind, FamilyTerm, MembershipFamily, MembershipFn, ShapeParams};
pub use universe::{OutputUniverse, DEFAULT_GRID_POINTS};
