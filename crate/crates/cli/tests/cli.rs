use std::fs;

use serde_json::Value;
use tripartite_cli::{parse_config, read_trajectory_csv};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tripartite").chain(args.iter().copied());
    let code = tripartite_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn stability_condition1_names_gamma4() {
    let (code, out, _) = run(&["stability", "--preset", "Condition1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ess"], serde_json::json!(["gamma4"]));
    assert_eq!(v["conditions"]["condition1"], true);
}

#[test]
fn simulate_condition3_to_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.csv");
    let (code, out, err) = run(&[
        "simulate",
        "--preset",
        "Condition3",
        "--out-csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("gamma8"), "{out}");
    let rows = read_trajectory_csv(&fs::read_to_string(&path).unwrap()).unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last[0], 200.0);
    for v in &last[1..] {
        assert!((v - 1.0).abs() < 1e-3, "{last:?}");
    }
}

#[test]
fn unknown_preset_is_usage_error() {
    let (code, out, err) = run(&["simulate", "--preset", "Nope"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("Nope"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["simulate", "--bogus"]).0, 1);
    assert_eq!(run(&["simulate", "--param", "C_XX=1"]).0, 1);
    assert_eq!(run(&["simulate", "--param", "C_SJ=-5"]).0, 2);
    assert_eq!(run(&["simulate", "--initial", "0.5,1.5,0.5"]).0, 2);
    assert_eq!(run(&["simulate", "--dt", "0"]).0, 2);
    assert_eq!(
        run(&["simulate", "--dt", "50", "--t-max", "100"]).0,
        3,
        "oversized step must be reported as a numeric failure"
    );
    assert_eq!(run(&["sweep", "--name", "nope"]).0, 1);
    assert_eq!(run(&["sweep"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn simulate_without_outputs_prints_csv() {
    let (code, out, _) = run(&["simulate", "--t-max", "0.05"]);
    assert_eq!(code, 0);
    let rows = read_trajectory_csv(&out).unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], [0.0, 0.5, 0.5, 0.5]);
}

#[test]
fn overrides_change_the_limit() {
    let (_, out, _) = run(&["stability", "--preset", "Condition1", "--param", "C_LF=20"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ess"], serde_json::json!(["gamma6"]));
}

#[test]
fn config_file_drives_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a.csv");
    let svg = dir.path().join("a.svg");
    let json = dir.path().join("a.json");
    let doc = format!(
        r#"{{"preset": "Condition2", "integrator": {{"t_max": 50}},
            "outputs": [{{"format": "csv", "path": {csv:?}}},
                        {{"format": "svg", "path": {svg:?}}},
                        {{"format": "json", "path": {json:?}}}]}}"#
    );
    let cfg_path = dir.path().join("run.json");
    fs::write(&cfg_path, &doc).unwrap();
    assert!(parse_config(&doc).is_ok());
    let (code, out, err) = run(&["simulate", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("gamma6"), "{out}");
    let rows = read_trajectory_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(rows.last().unwrap()[0], 50.0);
    assert_eq!(
        fs::read_to_string(&svg)
            .unwrap()
            .matches("<polyline")
            .count(),
        3
    );
    let report: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["ess"], serde_json::json!(["gamma6"]));
}

#[test]
fn bad_config_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"preset": "Condition1", "outputs": []}"#).unwrap();
    let (code, _, err) = run(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("outputs"), "{err}");
    assert_eq!(run(&["simulate", "--config", "/nonexistent/run.json"]).0, 2);
    let (code, _, _) = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--preset",
        "Condition1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn duplicate_output_paths_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("same");
    let p = p.to_str().unwrap();
    assert_eq!(run(&["simulate", "--out-csv", p, "--out-svg", p]).0, 2);
}

#[test]
fn equilibria_lists_nine_candidates() {
    let (code, out, _) = run(&["equilibria", "--preset", "Condition2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[6].starts_with("gamma6") && lines[6].contains("ESS"));
    assert!(lines[9].starts_with("gamma9") && lines[9].contains("infeasible"));
}

#[test]
fn payoff_table_has_eight_rows() {
    let (code, out, _) = run(&["payoff", "--preset", "Condition1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    let first: Vec<&str> = lines[1].split_whitespace().collect();
    assert_eq!(first[first.len() - 3..], ["-77", "-21", "35"]);
}

#[test]
fn named_sweep_writes_variants_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = run(&[
        "sweep",
        "--name",
        "cdj",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("x: settle time decreasing"), "{out}");
    for i in 0..6 {
        assert!(dir.path().join(format!("cdj_{i}.csv")).exists());
    }
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("cdj_summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["variants"].as_array().unwrap().len(), 6);
    assert_eq!(summary["failures"], serde_json::json!([]));
    assert_eq!(summary["speed"][0]["strictly_decreasing"], true);
    assert_eq!(summary["notes"].as_array().unwrap().len(), 3);
}

#[test]
fn custom_sweep_prints_summary() {
    let (code, out, err) = run(&[
        "sweep", "--vary", "C_SJ", "--values", "25,30,35", "--t-max", "60",
    ]);
    assert_eq!(code, 0, "{err}");
    let summary: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["parameter"], "C_SJ");
    assert_eq!(summary["speed"][0]["strictly_increasing"], true);
    assert_eq!(run(&["sweep", "--vary", "C_SJ", "--values", "-1"]).0, 2);
}

#[test]
fn identical_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut contents = Vec::new();
    for name in ["a", "b"] {
        let csv = dir.path().join(format!("{name}.csv"));
        let svg = dir.path().join(format!("{name}.svg"));
        let json = dir.path().join(format!("{name}.json"));
        let code = run(&[
            "simulate",
            "--preset",
            "Condition2",
            "--t-max",
            "30",
            "--out-csv",
            csv.to_str().unwrap(),
            "--out-svg",
            svg.to_str().unwrap(),
            "--out-json",
            json.to_str().unwrap(),
        ])
        .0;
        assert_eq!(code, 0);
        contents.push([csv, svg, json].map(|p| fs::read(p).unwrap()));
    }
    assert_eq!(contents[0], contents[1]);
}
