//! Interval inclusion analysis and compilation of interval tables into
//! minimized fuzzy rule bases.

mod iic;
mod interval;
mod rules;
mod truth_table;

pub use iic::{detect_overlaps, reduce_iic, OverlapReport, Reduction};
pub use interval::{includes, intersects, Interval};
pub use rules::{compile, compile_rules, Compilation, FuzzyRule, RuleBase, Term};
pub use truth_table::{build_truth_table, TruthRow, TruthTable};
