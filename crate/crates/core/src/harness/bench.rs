use std::hint::black_box;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzcore::InferenceEngine;
use crate::intervalgebra::{FuzzyRule, Interval, RuleBase, Term};
use crate::state::MachineState;

pub const DEFAULT_WARMUP: usize = 100;

/// Latency of single diagnoses, in microseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchStats {
    pub rules: usize,
    pub grid_points: usize,
    pub iterations: usize,
    pub warmup: usize,
    pub median_us: f64,
    pub p99_us: f64,
    pub mean_us: f64,
    pub min_us: f64,
    pub max_us: f64,
}

/// One input per rule, at the midpoints of its antecedent terms.
pub fn bench_inputs(rule_base: &RuleBase) -> Vec<(f64, f64)> {
    rule_base
        .rules()
        .iter()
        .map(|r| (rule_base.v_terms()[r.v_term].interval.midpoint(), rule_base.g_terms()[r.g_term].interval.midpoint()))
        .collect()
}

/// Times `iterations` full diagnoses (inference, centroid, decomposition)
/// cycling through `inputs`, after `DEFAULT_WARMUP` untimed calls.
pub fn bench_diagnose(engine: &InferenceEngine, inputs: &[(f64, f64)], iterations: usize) -> Result<BenchStats> {
    if iterations < 1000 {
        return Err(Error::invalid(format!("benchmark needs at least 1000 iterations, got {iterations}")));
    }
    if inputs.is_empty() {
        return Err(Error::invalid("benchmark needs at least one input"));
    }
    for i in 0..DEFAULT_WARMUP {
        let (x_v, x_g) = inputs[i % inputs.len()];
        black_box(engine.diagnose(black_box(x_v), black_box(x_g)));
    }
    let mut samples = Vec::with_capacity(iterations);
    for i in 0..iterations {
        let (x_v, x_g) = inputs[i % inputs.len()];
        let start = Instant::now();
        black_box(engine.diagnose(black_box(x_v), black_box(x_g)));
        samples.push(start.elapsed().as_secs_f64() * 1e6);
    }
    samples.sort_by(f64::total_cmp);
    let n = samples.len();
    let median = if n % 2 == 1 { samples[n / 2] } else { 0.5 * (samples[n / 2 - 1] + samples[n / 2]) };
    let p99 = samples[((0.99 * n as f64).ceil() as usize).clamp(1, n) - 1];
    Ok(BenchStats {
        rules: engine.rule_count(),
        grid_points: engine.universe().grid().len(),
        iterations,
        warmup: DEFAULT_WARMUP,
        median_us: median,
        p99_us: p99,
        mean_us: samples.iter().sum::<f64>() / n as f64,
        min_us: samples[0],
        max_us: samples[n - 1],
    })
}

/// Rule base with `n_rules` distinct rules over a square grid of overlapping
/// terms, for scaling measurements.
pub fn synthetic_rule_base(n_rules: usize) -> Result<RuleBase> {
    if n_rules == 0 {
        return Err(Error::invalid("synthetic rule base needs at least one rule"));
    }
    let k = (n_rules as f64).sqrt().ceil() as usize;
    let step = 10.0 / k as f64;
    let terms = |axis: &str| -> Result<Vec<Term>> {
        (0..k)
            .map(|i| {
                let lo = i as f64 * step;
                Ok(Term { id: format!("I{axis}{}", i + 1), interval: Interval::new(lo, lo + 1.5 * step)? })
            })
            .collect()
    };
    let rules = (0..n_rules)
        .map(|i| FuzzyRule {
            v_term: i % k,
            g_term: i / k,
            consequent: MachineState::from_severity(i % MachineState::COUNT).expect("level in range"),
        })
        .collect();
    RuleBase::new(terms("v")?, terms("g")?, rules)
}
