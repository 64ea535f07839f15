use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fuzzdiag::fuzzcore::FamilyKind;
use fuzzdiag::harness::{build_probes, run_experiment, DEFAULT_PROBE_OFFSET};
use fuzzdiag::model::DiagnosticModel;
use fuzzdiag::vibdata::StateIntervalTable;
use fuzzdiag::PipelineConfig;

fn fuzzdiag(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzdiag")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// gen-fixture, extract and compile in `dir`.
fn prepare(dir: &Path) {
    for args in [
        &["gen-fixture", "-o", "data.ndjson"][..],
        &["extract", "data.ndjson", "-o", "table.json"],
        &["compile", "table.json", "-o", "rb.json"],
    ] {
        let o = fuzzdiag(dir, args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn help_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(fuzzdiag(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(fuzzdiag(dir.path(), &["--version"]).status.code(), Some(0));
    assert_eq!(fuzzdiag(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(fuzzdiag(dir.path(), &["diagnose", "rb.json", "--xv", "1"]).status.code(), Some(1));
    assert_eq!(fuzzdiag(dir.path(), &["extract"]).status.code(), Some(1));
}

#[test]
fn extract_and_compile_report_the_reference_shape() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(fuzzdiag(d, &["gen-fixture", "-o", "data.csv"]).status.success());
    let o = fuzzdiag(d, &["extract", "data.csv", "-o", "table.json", "--per-position"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("Nr: 63.7%"), "{}", stdout(&o));
    assert!(d.join("table.P1.json").exists() && d.join("table.P4.json").exists());

    let o = fuzzdiag(d, &["compile", "table.json", "-o", "rb.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("7 rules, 5 v-terms, 2 g-terms"), "{text}");
    assert!(text.contains("inclusion Iv6 ⊆ Iv7"));
    DiagnosticModel::from_json(&fs::read_to_string(d.join("rb.json")).unwrap()).unwrap();
}

#[test]
fn data_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("empty.ndjson"), "").unwrap();
    let o = fuzzdiag(d, &["extract", "empty.ndjson"]);
    assert_eq!(o.status.code(), Some(2));

    let good =
        r#"{"position":"P1","window_start":"2023-03-01T00:00:00Z","g":[0.1],"fft_v":[1.0],"fft_g":[2.0],"state":"Nr"}"#;
    fs::write(d.join("nan.ndjson"), format!("{good}\n{}\n", good.replace("[1.0]", "[NaN]"))).unwrap();
    let o = fuzzdiag(d, &["extract", "nan.ndjson"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let csv = "position,window_start,g,fft_v,fft_g,state\nP1,2023-03-01T00:00:00Z,0.1,1.0,2.0,Nr\nP1,2023-03-01T04:00:00Z,0.1,NaN,2.0,Nr\n";
    fs::write(d.join("nan.csv"), csv).unwrap();
    let o = fuzzdiag(d, &["extract", "nan.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 3") && stderr(&o).contains("fft_v"), "{}", stderr(&o));

    fs::write(d.join("bad.json"), r#"{"schema":"ittflm-intervals/1","states":[]}"#).unwrap();
    let o = fuzzdiag(d, &["compile", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(fuzzdiag(d, &["diagnose", "missing.json", "--xv", "1", "--xg", "1"]).status.code(), Some(2));
}

#[test]
fn diagnose_prints_score_and_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prepare(d);
    let model = DiagnosticModel::from_json(&fs::read_to_string(d.join("rb.json")).unwrap()).unwrap();
    // St and Mi share their antecedents, so the middle of those terms fires only that pair.
    let rb = &model.rule_base;
    let st = &rb.rules()[2];
    let (x_v, x_g) = (rb.v_terms()[st.v_term].interval.midpoint(), rb.g_terms()[st.g_term].interval.midpoint());
    let o = fuzzdiag(d, &["diagnose", "rb.json", "--xv", &x_v.to_string(), "--xg", &x_g.to_string()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("score=2.50 St 50% & Mi 50%\n"), "{}", stdout(&o));
    assert!(stdout(&o).contains("latency:"));

    let o = fuzzdiag(d, &["diagnose", "rb.json", "--xv", "-40", "--xg", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("no rule fired\n"));
}

#[test]
fn diagnose_agrees_with_the_harness_on_a_probe() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prepare(d);
    let table = StateIntervalTable::from_json(&fs::read_to_string(d.join("table.json")).unwrap()).unwrap();
    let probe = build_probes(&table, DEFAULT_PROBE_OFFSET).unwrap().probes[4];
    let report = &run_experiment(&table, FamilyKind::Trapezoidal, &PipelineConfig::default()).unwrap().reports[4];
    let want = format!("score={:.2} {}\n", report.score.unwrap(), report.decomposition);
    let o =
        fuzzdiag(d, &["diagnose", "rb.json", "--xv", &format!("{:?}", probe.x_v), "--xg", &format!("{:?}", probe.x_g)]);
    assert!(stdout(&o).starts_with(&want), "{} vs {want}", stdout(&o));
}

#[test]
fn experiment_and_bench_write_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prepare(d);
    let o = fuzzdiag(d, &["experiment", "table.json", "--out-dir", "reports"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let md = fs::read_to_string(d.join("reports/experiment.md")).unwrap();
    assert!(md.contains("| 1 | trapezoidal | 7 |"), "{md}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("reports/experiment.json")).unwrap()).unwrap();
    assert_eq!(json["ranking"][0], "trapezoidal");
    assert!(json["families"][0]["probes"][0].get("latency_us").is_none());

    let o = fuzzdiag(d, &["bench", "rb.json", "--iterations", "1000", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let bench: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(bench["median_us"].as_f64().unwrap() > 0.0 && bench["p99_us"].is_number());
    assert_eq!(bench["rules"], 7);
}

#[test]
fn single_state_experiment_is_all_excellent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for args in [
        &["gen-fixture", "-o", "one.ndjson", "--geometry", "single", "--frames", "40"][..],
        &["extract", "one.ndjson", "-o", "one.json"],
    ] {
        assert!(fuzzdiag(d, args).status.success());
    }
    for family in ["trap", "tri"] {
        let o = fuzzdiag(d, &["experiment", "one.json", "--single-family", "--family", family, "--format", "json"]);
        let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(json["families"][0]["summary"]["counts"]["excellent"], 2, "{family}");
    }
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    prepare(d);
    fs::write(d.join("fuzz.toml"), "family = \"gauss\"\nrulebase = \"gauss.json\"\n").unwrap();
    let o = fuzzdiag(d, &["compile", "table.json", "--config", "fuzz.toml"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("(gaussian family)"));
    assert!(fs::read_to_string(d.join("gauss.json")).unwrap().contains("\"kind\": \"gaussian\""));

    let o = fuzzdiag(d, &["compile", "table.json", "--config", "fuzz.toml", "--family", "tri", "-o", "tri.json"]);
    assert!(stdout(&o).contains("(triangular family)"));

    fs::write(d.join("bad.toml"), "colour = 1\n").unwrap();
    assert_eq!(fuzzdiag(d, &["compile", "table.json", "--config", "bad.toml"]).status.code(), Some(1));
    assert_eq!(fuzzdiag(d, &["compile", "table.json", "--shoulder", "0.7"]).status.code(), Some(1));
}
