//! Probe experiments, accuracy grading, family comparison and latency
//! benchmarks.

mod bench;
mod experiment;
mod grade;
mod probes;
mod report;

pub use bench::{bench_diagnose, bench_inputs, synthetic_rule_base, BenchStats, DEFAULT_WARMUP};
pub use experiment::{
    compare_families, run_experiment, run_with_engine, Comparison, DiagnosisReport, ExperimentReport, Summary,
};
pub use grade::{grade_accuracy, Grade};
pub use probes::{build_probes, Probe, ProbeEnd, ProbeSet, DEFAULT_PROBE_OFFSET};
pub use report::{round_sig, BENCH_SCHEMA, EXPERIMENT_SCHEMA};
