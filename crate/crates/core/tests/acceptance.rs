//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use fuzzdiag::fixture::{generate, FixtureSpec};
use fuzzdiag::fuzzcore::{aggregate, decompose_score, defuzzify, FamilyKind, OutputUniverse};
use fuzzdiag::harness::{bench_diagnose, build_probes, compare_families, run_experiment, DEFAULT_PROBE_OFFSET};
use fuzzdiag::intervalgebra::{compile_rules, reduce_iic, Interval};
use fuzzdiag::model::{DiagnosticModel, EngineSettings};
use fuzzdiag::vibdata::{extract_intervals, rms, StateIntervalTable};
use fuzzdiag::{MachineState, PipelineConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn canonical_table() -> StateIntervalTable {
    extract_intervals(&generate(&FixtureSpec::canonical()).unwrap()).unwrap()
}

fn compile_shape() -> Outcome {
    let table = canonical_table();
    let start = Instant::now();
    let rb = compile_rules(&table);
    let elapsed = start.elapsed();
    let shape = (rb.len(), rb.v_terms().len(), rb.g_terms().len());
    check(
        shape == (7, 5, 2) && elapsed < Duration::from_secs(1),
        format!("{} rules, {} v-terms, {} g-terms in {elapsed:.2?}", shape.0, shape.1, shape.2),
    )
}

fn iic_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11c);
    let mut mismatches = 0;
    let mut not_idempotent = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(0..=12);
        let set: Vec<Interval> = (0..n)
            .map(|_| {
                let lo = rng.gen_range(-10i32..10);
                let w = rng.gen_range(0i32..8);
                iv(lo as f64 / 2.0, (lo + w) as f64 / 2.0)
            })
            .collect();
        let r = reduce_iic(&set);
        if r.survivors != iic_oracle(&set) {
            mismatches += 1;
        }
        let kept: Vec<Interval> = r.survivors.iter().map(|&i| set[i]).collect();
        if reduce_iic(&kept).survivors != (0..kept.len()).collect::<Vec<_>>() {
            not_idempotent += 1;
        }
    }
    check(
        mismatches == 0 && not_idempotent == 0,
        format!("1000 sets: {mismatches} oracle mismatches, {not_idempotent} non-idempotent"),
    )
}

fn rms_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4a5);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=256);
        let scale = 10f64.powi(rng.gen_range(-6..=6));
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0) * scale).collect();
        let r = rms(&xs).unwrap();
        let want = rms_oracle(&xs);
        let rel = (r - want).abs() / want.max(f64::MIN_POSITIVE);
        worst = worst.max(rel);

        let c: f64 = rng.gen_range(-100.0..100.0);
        let scaled: Vec<f64> = xs.iter().map(|x| c * x).collect();
        let homogeneous = (rms(&scaled).unwrap() - c.abs() * r).abs() <= 1e-12 * c.abs() * r;
        let lo = xs.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
        let hi = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let bounded = lo * (1.0 - 1e-12) <= r && r <= hi * (1.0 + 1e-12);
        if rel >= 1e-12 || !homogeneous || !bounded {
            failures += 1;
        }
    }
    check(failures == 0, format!("1000 vectors: {failures} failures, worst relative error {worst:.2e}"))
}

fn defuzzification_anchors() -> Outcome {
    let start = Instant::now();
    let u = OutputUniverse::default();
    let pair = defuzzify(&aggregate(&u, [(2, 1.0), (3, 1.0)])).unwrap();
    let pair_dec = decompose_score(Some(pair), &u);
    let normal = defuzzify(&aggregate(&u, [(0, 1.0)])).unwrap();
    let st = decompose_score(Some(2.0), &u);
    let elapsed = start.elapsed();
    let split_ok = pair_dec.shares().len() == 2
        && pair_dec.share(MachineState::St).abs_diff(50) <= 1
        && pair_dec.share(MachineState::Mi).abs_diff(50) <= 1;
    check(
        (pair - 2.5).abs() <= 0.005
            && split_ok
            && normal.abs() <= 0.005
            && st.to_string() == "St 100%"
            && elapsed < Duration::from_secs(1),
        format!("levels 2+3 -> {pair:.4} {pair_dec}; Nr -> {normal:.4}; 2.00 -> {st}; {elapsed:.2?}"),
    )
}

fn family_ordering() -> Outcome {
    let start = Instant::now();
    let config = PipelineConfig::default();
    let mut holds = 0;
    let mut per_seed = Vec::new();
    for seed in 1..=10 {
        let table = extract_intervals(&generate(&FixtureSpec::seeded(seed)).unwrap()).unwrap();
        let c = compare_families(&table, &config).unwrap();
        let d = |k| c.get(k).unwrap().summary.detected();
        let (trap, tri, gauss) = (d(FamilyKind::Trapezoidal), d(FamilyKind::Triangular), d(FamilyKind::Gaussian));
        if trap >= tri && tri > gauss {
            holds += 1;
        }
        per_seed.push(format!("{trap}/{tri}/{gauss}"));
    }
    let table = canonical_table();
    let tri = run_experiment(&table, FamilyKind::Triangular, &config).unwrap().summary;
    let gauss = run_experiment(&table, FamilyKind::Gaussian, &config).unwrap().summary;
    let elapsed = start.elapsed();
    check(
        holds >= 9
            && tri.detected().abs_diff(7) <= 1
            && gauss.usable().abs_diff(4) <= 1
            && elapsed < Duration::from_secs(10),
        format!(
            "ordering held in {holds}/10 seeds (trap/tri/gauss detected: {}); canonical triangular detection {}/14, gaussian usable {}/14; {elapsed:.2?}",
            per_seed.join(" "),
            tri.detected(),
            gauss.usable()
        ),
    )
}

fn latency() -> Outcome {
    let table = canonical_table();
    let model =
        DiagnosticModel::build(compile_rules(&table), FamilyKind::Trapezoidal, EngineSettings::default()).unwrap();
    let engine = model.engine().unwrap();
    let inputs: Vec<(f64, f64)> =
        build_probes(&table, DEFAULT_PROBE_OFFSET).unwrap().probes.iter().map(|p| (p.x_v, p.x_g)).collect();
    let s = bench_diagnose(&engine, &inputs, 10_000).unwrap();
    check(
        s.median_us < 5000.0 && s.grid_points == 1201 && s.rules == 7,
        format!(
            "median {:.1} us, p99 {:.1} us over {} iterations after {} warmup (p99 < 5 ms: {})",
            s.median_us,
            s.p99_us,
            s.iterations,
            s.warmup,
            s.p99_us < 5000.0
        ),
    )
}

fn gaussian_sparsity() -> Outcome {
    let e = run_experiment(&canonical_table(), FamilyKind::Gaussian, &PipelineConfig::default()).unwrap();
    let undefined: Vec<String> = e.reports.iter().filter(|r| r.score.is_none()).map(|r| r.probe.id()).collect();
    check(!undefined.is_empty(), format!("{} of 14 probes undefined: {}", undefined.len(), undefined.join(", ")))
}

fn pipeline_artifacts(dir: &Path) -> Vec<Vec<u8>> {
    let run = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_fuzzdiag")).current_dir(dir).args(args).output().unwrap();
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    };
    run(&["gen-fixture", "-o", "data.ndjson", "--seed", "42", "--jitter", "0.04"]);
    run(&["extract", "data.ndjson", "-o", "table.json"]);
    run(&["compile", "table.json", "-o", "rulebase.json"]);
    run(&["experiment", "table.json", "--out-dir", "reports"]);
    ["data.ndjson", "table.json", "rulebase.json", "reports/experiment.json"]
        .iter()
        .map(|f| std::fs::read(dir.join(f)).unwrap())
        .collect()
}

fn determinism() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (first, second) = (pipeline_artifacts(a.path()), pipeline_artifacts(b.path()));
    let bytes: usize = first.iter().map(Vec::len).sum();
    check(first == second, format!("4 artifacts, {bytes} bytes, identical: {}", first == second))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("rule compilation shape", compile_shape),
        ("IIC oracle equivalence", iic_oracle_equivalence),
        ("RMS property suite", rms_suite),
        ("defuzzification anchors", defuzzification_anchors),
        ("family comparison ordering", family_ordering),
        ("diagnosis latency", latency),
        ("gaussian sparsity", gaussian_sparsity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
