#![allow(dead_code)]

use std::path::PathBuf;

use tripartite_cli::{render_chart_svg, write_report_json, write_trajectory_csv, ChartSpec};
use tripartite_core::{
    default_sign_tolerance, integrate, preset, stability_report, IntegratorConfig, PresetName,
};

pub const GOLDEN_CSV: &str = "condition1_t1.csv";
pub const GOLDEN_JSON: &str = "condition1_report.json";
pub const GOLDEN_SVG: &str = "condition1_t20.svg";

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn run(t_max: f64) -> tripartite_core::Trajectory {
    let sc = preset(PresetName::Condition1);
    let config = IntegratorConfig {
        t_max,
        ..Default::default()
    };
    integrate(&sc.params, sc.initial, &config).unwrap()
}

pub fn csv_bytes() -> String {
    write_trajectory_csv(&run(1.0)).unwrap()
}

pub fn json_bytes() -> String {
    let p = preset(PresetName::Condition1).params;
    write_report_json(&p, &stability_report(&p, default_sign_tolerance(&p)))
}

pub fn svg_bytes() -> String {
    render_chart_svg(&ChartSpec::from_trajectory("Condition 1", &run(20.0))).unwrap()
}

/// Name and freshly generated contents of every golden file.
pub fn generated() -> [(&'static str, String); 3] {
    [
        (GOLDEN_CSV, csv_bytes()),
        (GOLDEN_JSON, json_bytes()),
        (GOLDEN_SVG, svg_bytes()),
    ]
}

/// Compares against the stored file, rewriting it when `UPDATE_GOLDEN=1`.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if std::env::var("UPDATE_GOLDEN").as_deref() == Ok("1") {
        std::fs::write(&path, actual).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        let line = expected
            .lines()
            .zip(actual.lines())
            .position(|(a, b)| a != b)
            .map_or(expected.lines().count().min(actual.lines().count()), |i| i)
            + 1;
        Err(format!(
            "{name} differs from the stored copy at line {line}"
        ))
    }
}
