//! Markdown and JSON rendering of experiment and benchmark results. Floats
//! are rounded to six significant digits so reruns compare byte for byte.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::fuzzcore::{Decomposition, FamilyKind};
use crate::state::MachineState;

use super::bench::BenchStats;
use super::experiment::{Comparison, DiagnosisReport, ExperimentReport, Summary};
use super::grade::Grade;
use super::probes::ProbeEnd;

pub const EXPERIMENT_SCHEMA: &str = "ittflm-experiment/1";
pub const BENCH_SCHEMA: &str = "ittflm-bench/1";

/// Rounds to `digits` significant digits; zero and non-finite values pass through.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() || digits == 0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

fn sig6(x: f64) -> f64 {
    round_sig(x, 6)
}

fn pct(rate: f64) -> String {
    format!("{}%", sig6(100.0 * rate))
}

#[derive(Serialize)]
struct CountsWire {
    excellent: usize,
    good: usize,
    average: usize,
    poor: usize,
    bad: usize,
}

#[derive(Serialize)]
struct SummaryWire {
    probes: usize,
    counts: CountsWire,
    undefined: usize,
    detected: usize,
    usable: usize,
    detection_rate: f64,
    usable_rate: f64,
    excellent_rate: f64,
}

impl From<&Summary> for SummaryWire {
    fn from(s: &Summary) -> Self {
        SummaryWire {
            probes: s.probes,
            counts: CountsWire {
                excellent: s.count(Grade::Excellent),
                good: s.count(Grade::Good),
                average: s.count(Grade::Average),
                poor: s.count(Grade::Poor),
                bad: s.count(Grade::Bad),
            },
            undefined: s.undefined,
            detected: s.detected(),
            usable: s.usable(),
            detection_rate: sig6(s.detection_rate()),
            usable_rate: sig6(s.usable_rate()),
            excellent_rate: sig6(s.excellent_rate()),
        }
    }
}

#[derive(Serialize)]
struct ProbeWire<'a> {
    number: usize,
    id: String,
    end: ProbeEnd,
    x_v: f64,
    x_g: f64,
    expected_state: MachineState,
    score: Option<f64>,
    decomposition: &'a Decomposition,
    fired: usize,
    grade: Grade,
}

impl<'a> From<&'a DiagnosisReport> for ProbeWire<'a> {
    fn from(r: &'a DiagnosisReport) -> Self {
        ProbeWire {
            number: r.probe.number,
            id: r.probe.id(),
            end: r.probe.end,
            x_v: sig6(r.probe.x_v),
            x_g: sig6(r.probe.x_g),
            expected_state: r.expected_state,
            score: r.score.map(sig6),
            decomposition: &r.decomposition,
            fired: r.fired,
            grade: r.grade,
        }
    }
}

#[derive(Serialize)]
struct ExperimentWire<'a> {
    kind: FamilyKind,
    rules: usize,
    summary: SummaryWire,
    probes: Vec<ProbeWire<'a>>,
}

impl<'a> From<&'a ExperimentReport> for ExperimentWire<'a> {
    fn from(e: &'a ExperimentReport) -> Self {
        ExperimentWire {
            kind: e.kind,
            rules: e.rules,
            summary: (&e.summary).into(),
            probes: e.reports.iter().map(ProbeWire::from).collect(),
        }
    }
}

#[derive(Serialize)]
struct ComparisonWire<'a> {
    schema: &'static str,
    ranking: Vec<FamilyKind>,
    families: Vec<ExperimentWire<'a>>,
}

fn write_probe_table(out: &mut String, e: &ExperimentReport) {
    out.push_str("| # | Probe | x_v | x_g | ExpS | Score | State | Accuracy |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in &e.reports {
        let score = r.score.map_or_else(|| "NaN".to_string(), |s| sig6(s).to_string());
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            r.probe.number,
            r.probe.id(),
            sig6(r.probe.x_v),
            sig6(r.probe.x_g),
            r.expected_state,
            score,
            r.decomposition,
            r.grade
        );
    }
}

fn write_summary(out: &mut String, s: &Summary) {
    let _ = writeln!(
        out,
        "\nDetection (Exc+Good): {}/{} ({}). Usable (Exc+Good+Ave): {}/{} ({}). Excellent: {}/{} ({}). Undefined scores: {}.",
        s.detected(),
        s.probes,
        pct(s.detection_rate()),
        s.usable(),
        s.probes,
        pct(s.usable_rate()),
        s.count(Grade::Excellent),
        s.probes,
        pct(s.excellent_rate()),
        s.undefined
    );
}

impl ExperimentReport {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {} membership functions ({} rules)\n\n", self.kind, self.rules);
        write_probe_table(&mut out, self);
        write_summary(&mut out, &self.summary);
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let wire = ComparisonWire { schema: EXPERIMENT_SCHEMA, ranking: vec![self.kind], families: vec![self.into()] };
        Ok(serde_json::to_string_pretty(&wire)? + "\n")
    }
}

impl Comparison {
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("# Family comparison\n\n");
        out.push_str(
            "| Rank | Family | Rules | Exc | Good | Ave | Poor | Bad | Undefined | Detection | Usable | Excellent |\n",
        );
        out.push_str("|---|---|---|---|---|---|---|---|---|---|---|---|\n");
        for (rank, e) in self.experiments.iter().enumerate() {
            let s = &e.summary;
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                rank + 1,
                e.kind,
                e.rules,
                s.count(Grade::Excellent),
                s.count(Grade::Good),
                s.count(Grade::Average),
                s.count(Grade::Poor),
                s.count(Grade::Bad),
                s.undefined,
                pct(s.detection_rate()),
                pct(s.usable_rate()),
                pct(s.excellent_rate())
            );
        }
        for e in &self.experiments {
            out.push('\n');
            out.push_str(&e.to_markdown());
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let wire = ComparisonWire {
            schema: EXPERIMENT_SCHEMA,
            ranking: self.ranking(),
            families: self.experiments.iter().map(ExperimentWire::from).collect(),
        };
        Ok(serde_json::to_string_pretty(&wire)? + "\n")
    }
}

#[derive(Serialize)]
struct BenchWire<'a> {
    schema: &'static str,
    #[serde(flatten)]
    stats: &'a BenchStats,
}

impl BenchStats {
    fn rounded(&self) -> BenchStats {
        BenchStats {
            median_us: sig6(self.median_us),
            p99_us: sig6(self.p99_us),
            mean_us: sig6(self.mean_us),
            min_us: sig6(self.min_us),
            max_us: sig6(self.max_us),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let stats = self.rounded();
        Ok(serde_json::to_string_pretty(&BenchWire { schema: BENCH_SCHEMA, stats: &stats })? + "\n")
    }

    pub fn to_markdown(&self) -> String {
        let s = self.rounded();
        format!(
            "# Diagnosis latency\n\n\
             {} rules, {} grid points, {} iterations after {} warmup\n\n\
             | median (us) | p99 (us) | mean (us) | min (us) | max (us) |\n\
             |---|---|---|---|---|\n\
             | {} | {} | {} | {} | {} |\n",
            s.rules, s.grid_points, s.iterations, s.warmup, s.median_us, s.p99_us, s.mean_us, s.min_us, s.max_us
        )
    }
}
