//! JSON documents for stability reports and sweep summaries.
//!
//! Stability report schema (keys in this order):
//!
//! ```text
//! params          { "I_J": n, ..., "E_RF": n }
//! sign_tolerance  n
//! conditions      { "condition1": bool, "condition2": bool, "condition3": bool }
//! equilibria      [ { label, kind, status, coordinates, eigenvalues: [{re, im}],
//!                     signs: ["-" | "0" | "+"], classification } ]
//! ess             [ label ]
//! ```
//!
//! The interior candidate (`gamma9`) is always the last record. When it is
//! not feasible its `coordinates`, `eigenvalues`, `signs` and
//! `classification` are `null` and `detail` explains why.

use serde_json::{json, Map, Value};
use tripartite_core::{
    Axis, Complex64, EquilibriumLabel, EquilibriumReport, InteriorOutcome, ModelParams, ParamName,
    SpeedOrdering, StabilityReport, SweepResult, SweepValue,
};

use crate::error::CliError;

fn num(v: f64) -> Value {
    Value::from(v + 0.0)
}

fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

pub fn params_json(p: &ModelParams) -> Value {
    Value::Object(
        ParamName::ALL
            .iter()
            .map(|n| (n.symbol().to_string(), num(p.get(*n))))
            .collect(),
    )
}

fn eigen_json(e: &Complex64) -> Value {
    json!({ "re": num(e.re), "im": num(e.im) })
}

fn record(r: &EquilibriumReport) -> Value {
    json!({
        "label": r.point.label.name(),
        "kind": match r.point.kind {
            tripartite_core::EquilibriumKind::Pure => "pure",
            tripartite_core::EquilibriumKind::Interior => "interior",
        },
        "status": "feasible",
        "coordinates": r.point.coords.to_array().map(num).to_vec(),
        "eigenvalues": r.eigenvalues.iter().map(eigen_json).collect::<Vec<_>>(),
        "signs": r.signs.iter().map(|s| s.symbol().to_string()).collect::<Vec<_>>(),
        "classification": r.classification.as_str(),
    })
}

fn interior_detail(outcome: &InteriorOutcome) -> String {
    match outcome {
        InteriorOutcome::Feasible(_) => "interior rest point".to_string(),
        InteriorOutcome::Infeasible { x_star } => {
            format!("x* = -C_IF/C_LF = {} lies outside (0, 1)", x_star)
        }
        InteriorOutcome::Inconsistent {
            x_from_fisheries,
            x_from_countries,
        } => {
            format!("x* = {x_from_fisheries} from the fisheries bracket but {x_from_countries} from the countries bracket")
        }
        InteriorOutcome::Degenerate(why) => why.to_string(),
    }
}

pub fn report_value(p: &ModelParams, report: &StabilityReport) -> Value {
    let mut equilibria: Vec<Value> = report.vertices.iter().map(record).collect();
    let mut interior = match &report.interior_report {
        Some(r) => record(r),
        None => json!({
            "label": EquilibriumLabel::G9.name(),
            "kind": "interior",
            "status": report.interior.status(),
            "coordinates": null,
            "eigenvalues": null,
            "signs": null,
            "classification": null,
        }),
    };
    interior
        .as_object_mut()
        .expect("record is an object")
        .insert(
            "detail".into(),
            Value::from(interior_detail(&report.interior)),
        );
    equilibria.push(interior);
    let c = report.conditions;
    json!({
        "params": params_json(p),
        "sign_tolerance": num(report.sign_tolerance),
        "conditions": {
            "condition1": c.condition1,
            "condition2": c.condition2,
            "condition3": c.condition3,
        },
        "equilibria": equilibria,
        "ess": report.ess().map(|r| r.point.label.name()).collect::<Vec<_>>(),
    })
}

fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serialises");
    s.push('\n');
    s
}

pub fn write_report_json(p: &ModelParams, report: &StabilityReport) -> String {
    to_text(&report_value(p, report))
}

fn sweep_value_json(v: &SweepValue) -> Value {
    match v {
        SweepValue::Scalar(x) => num(*x),
        SweepValue::Initial(s) => Value::from(s.to_array().map(num).to_vec()),
    }
}

/// Per-axis speed ordering, or the error that prevented computing it.
pub type AxisOrdering = (Axis, Result<SpeedOrdering, String>);

/// Summary of a sweep: one record per variant plus the speed orderings.
pub fn sweep_summary_json(
    name: &str,
    result: &SweepResult,
    orderings: &[AxisOrdering],
    notes: &[Value],
    csv_files: &[String],
) -> Result<String, CliError> {
    let variants: Vec<Value> = result
        .variants
        .iter()
        .enumerate()
        .map(|(i, run)| {
            let mut settle = Map::new();
            for axis in Axis::ALL {
                settle.insert(
                    axis.letter().to_string(),
                    opt_num(run.settle_times[axis.index()]),
                );
            }
            json!({
                "value": sweep_value_json(&run.value),
                "converged": run.convergence.converged,
                "limit": run.convergence.limit.map(|l| l.label.name()),
                "t_converge": opt_num(run.convergence.t_converge),
                "final_state": run.trajectory.final_state().to_array().map(num).to_vec(),
                "settle_times": settle,
                "csv": csv_files.get(i),
            })
        })
        .collect();
    let speed: Vec<Value> = orderings
        .iter()
        .map(|(axis, ordering)| match ordering {
            Ok(o) => json!({
                "axis": axis.letter().to_string(),
                "target": num(o.target),
                "trend": o.trend().as_str(),
                "strictly_increasing": o.strictly_increasing,
                "strictly_decreasing": o.strictly_decreasing,
                "order": o.pairs.iter().map(|(v, t)| json!({ "value": sweep_value_json(v), "time": num(*t) })).collect::<Vec<_>>(),
            }),
            Err(e) => json!({ "axis": axis.letter().to_string(), "error": e }),
        })
        .collect();
    let config = &result.spec.config;
    let doc = json!({
        "sweep": name,
        "parameter": result.spec.axis.label(),
        "base": params_json(&result.spec.base.params),
        "integrator": {
            "dt": num(config.dt),
            "t_max": num(config.t_max),
            "convergence_eps": num(config.convergence_eps),
            "threshold": num(config.threshold),
        },
        "variants": variants,
        "failures": result.failures().map(|(i, _)| i).collect::<Vec<_>>(),
        "speed": speed,
        "notes": notes,
    });
    Ok(to_text(&doc))
}
