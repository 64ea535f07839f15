use std::collections::BTreeMap;
use std::time::Instant;

use crate::config::PipelineConfig;
use crate::error::Result;
use crate::fuzzcore::{Decomposition, FamilyKind, InferenceEngine};
use crate::intervalgebra::compile_rules;
use crate::model::DiagnosticModel;
use crate::state::MachineState;
use crate::vibdata::StateIntervalTable;

use super::grade::{grade_accuracy, Grade};
use super::probes::{build_probes, Probe};

/// Outcome of diagnosing one probe.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosisReport {
    pub probe: Probe,
    pub expected_state: MachineState,
    pub score: Option<f64>,
    pub decomposition: Decomposition,
    pub fired: usize,
    pub grade: Grade,
    /// Wall time of the diagnosis; left out of JSON output.
    pub latency_us: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub probes: usize,
    pub counts: BTreeMap<Grade, usize>,
    pub undefined: usize,
}

impl Summary {
    fn from_reports(reports: &[DiagnosisReport]) -> Self {
        let mut counts: BTreeMap<Grade, usize> = Grade::ALL.iter().map(|&g| (g, 0)).collect();
        for r in reports {
            *counts.entry(r.grade).or_default() += 1;
        }
        Summary { probes: reports.len(), counts, undefined: reports.iter().filter(|r| r.score.is_none()).count() }
    }

    pub fn count(&self, grade: Grade) -> usize {
        self.counts.get(&grade).copied().unwrap_or(0)
    }

    fn count_where(&self, pred: impl Fn(Grade) -> bool) -> usize {
        self.counts.iter().filter(|(g, _)| pred(**g)).map(|(_, n)| n).sum()
    }

    /// Probes graded Excellent or Good.
    pub fn detected(&self) -> usize {
        self.count_where(Grade::is_detection)
    }

    /// Probes graded Average or better.
    pub fn usable(&self) -> usize {
        self.count_where(Grade::is_usable)
    }

    fn rate(&self, n: usize) -> f64 {
        if self.probes == 0 {
            0.0
        } else {
            n as f64 / self.probes as f64
        }
    }

    pub fn detection_rate(&self) -> f64 {
        self.rate(self.detected())
    }

    pub fn usable_rate(&self) -> f64 {
        self.rate(self.usable())
    }

    pub fn excellent_rate(&self) -> f64 {
        self.rate(self.count(Grade::Excellent))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub kind: FamilyKind,
    pub rules: usize,
    pub reports: Vec<DiagnosisReport>,
    pub summary: Summary,
}

/// Evaluates the probe set of `table` against an already built engine.
pub fn run_with_engine(
    engine: &InferenceEngine,
    kind: FamilyKind,
    table: &StateIntervalTable,
    probe_offset: f64,
) -> Result<ExperimentReport> {
    let probes = build_probes(table, probe_offset)?;
    let reports: Vec<DiagnosisReport> = probes
        .probes
        .iter()
        .map(|&probe| {
            let start = Instant::now();
            let d = engine.diagnose(probe.x_v, probe.x_g);
            let latency_us = start.elapsed().as_secs_f64() * 1e6;
            DiagnosisReport {
                probe,
                expected_state: probe.state,
                score: d.score,
                grade: grade_accuracy(probe.state, &d.decomposition),
                decomposition: d.decomposition,
                fired: d.fired,
                latency_us,
            }
        })
        .collect();
    let summary = Summary::from_reports(&reports);
    Ok(ExperimentReport { kind, rules: engine.rule_count(), reports, summary })
}

/// Compiles `table`, builds the `kind` families and runs the probe protocol.
pub fn run_experiment(
    table: &StateIntervalTable,
    kind: FamilyKind,
    config: &PipelineConfig,
) -> Result<ExperimentReport> {
    config.validate()?;
    let model = DiagnosticModel::build(compile_rules(table), kind, config.engine_settings())?;
    run_with_engine(&model.engine()?, kind, table, config.probe_offset)
}

/// Experiments for all three families, ranked.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub experiments: Vec<ExperimentReport>,
}

impl Comparison {
    pub fn get(&self, kind: FamilyKind) -> Option<&ExperimentReport> {
        self.experiments.iter().find(|e| e.kind == kind)
    }

    pub fn ranking(&self) -> Vec<FamilyKind> {
        self.experiments.iter().map(|e| e.kind).collect()
    }
}

/// Runs every family and ranks by detection rate, then usable rate; ties keep
/// the order trapezoidal, triangular, gaussian.
pub fn compare_families(table: &StateIntervalTable, config: &PipelineConfig) -> Result<Comparison> {
    let mut experiments =
        FamilyKind::ALL.iter().map(|&kind| run_experiment(table, kind, config)).collect::<Result<Vec<_>>>()?;
    experiments.sort_by(|a, b| {
        b.summary.detected().cmp(&a.summary.detected()).then(b.summary.usable().cmp(&a.summary.usable()))
    });
    Ok(Comparison { experiments })
}
