//! Run configuration documents.
//!
//! A run is described by a JSON object:
//!
//! ```json
//! {
//!   "preset": "Condition1",
//!   "initial": [0.5, 0.5, 0.5],
//!   "integrator": { "dt": 0.01, "t_max": 200 },
//!   "outputs": [ { "format": "csv", "path": "run.csv" } ]
//! }
//! ```
//!
//! Exactly one of `preset` or `params` must be present. `params` maps the
//! parameter symbols (`I_J`, `C_LC`, ...) to non-negative numbers; every
//! symbol is required except `C_MC` and `E_RF`, which default to 0.
//! `initial` defaults to the preset's starting point (the cube centre), and
//! every `integrator` key is optional. Unknown keys are rejected at every
//! level.

use std::path::PathBuf;

use serde_json::{Map, Value};
use tripartite_core::{
    preset, IntegratorConfig, ModelParams, ParamName, PresetName, StrategyState,
};

use crate::error::ConfigError;

const OPTIONAL_PARAMS: [ParamName; 2] = [
    ParamName::CountriesMonitoringCost,
    ParamName::FisheriesRevenueLoss,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamSource {
    Preset(PresetName),
    Explicit(ModelParams),
}

impl ParamSource {
    pub fn params(&self) -> ModelParams {
        match self {
            ParamSource::Preset(name) => preset(*name).params,
            ParamSource::Explicit(p) => *p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSink {
    pub format: OutputFormat,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: ParamSource,
    pub initial: StrategyState,
    pub integrator: IntegratorConfig,
    pub outputs: Vec<OutputSink>,
}

impl RunConfig {
    pub fn params(&self) -> ModelParams {
        self.source.params()
    }

    /// Serialises back into the document format accepted by [`parse_config`].
    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        match self.source {
            ParamSource::Preset(name) => {
                root.insert("preset".into(), Value::from(name.as_str()));
            }
            ParamSource::Explicit(p) => {
                let params: Map<String, Value> = ParamName::ALL
                    .iter()
                    .map(|n| (n.symbol().to_string(), Value::from(p.get(*n))))
                    .collect();
                root.insert("params".into(), Value::Object(params));
            }
        }
        root.insert(
            "initial".into(),
            Value::from(self.initial.to_array().to_vec()),
        );
        let cfg = &self.integrator;
        let mut integrator = Map::new();
        integrator.insert("dt".into(), Value::from(cfg.dt));
        integrator.insert("t_max".into(), Value::from(cfg.t_max));
        integrator.insert("convergence_eps".into(), Value::from(cfg.convergence_eps));
        integrator.insert(
            "convergence_window".into(),
            Value::from(cfg.convergence_window as u64),
        );
        integrator.insert("threshold".into(), Value::from(cfg.threshold));
        integrator.insert(
            "stop_on_convergence".into(),
            Value::from(cfg.stop_on_convergence),
        );
        root.insert("integrator".into(), Value::Object(integrator));
        let outputs = self
            .outputs
            .iter()
            .map(|o| {
                let mut m = Map::new();
                m.insert("format".into(), Value::from(o.format.as_str()));
                m.insert(
                    "path".into(),
                    Value::from(o.path.to_string_lossy().into_owned()),
                );
                Value::Object(m)
            })
            .collect();
        root.insert("outputs".into(), Value::Array(outputs));
        serde_json::to_string_pretty(&Value::Object(root)).expect("config serialises")
    }
}

fn reject_unknown(
    obj: &Map<String, Value>,
    prefix: &str,
    allowed: &[&str],
) -> Result<(), ConfigError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(ConfigError::UnknownKey(format!("{prefix}{k}"))),
        None => Ok(()),
    }
}

fn as_number(v: &Value, key: &str) -> Result<f64, ConfigError> {
    v.as_f64().ok_or(ConfigError::WrongType {
        key: key.to_string(),
        expected: "a number",
    })
}

fn as_object<'a>(v: &'a Value, key: &str) -> Result<&'a Map<String, Value>, ConfigError> {
    v.as_object().ok_or(ConfigError::WrongType {
        key: key.to_string(),
        expected: "an object",
    })
}

fn as_str<'a>(v: &'a Value, key: &str) -> Result<&'a str, ConfigError> {
    v.as_str().ok_or(ConfigError::WrongType {
        key: key.to_string(),
        expected: "a string",
    })
}

fn out_of_range(key: impl Into<String>, reason: impl ToString) -> ConfigError {
    ConfigError::OutOfRange {
        key: key.into(),
        reason: reason.to_string(),
    }
}

fn parse_params(obj: &Map<String, Value>) -> Result<ModelParams, ConfigError> {
    for key in obj.keys() {
        let known = ParamName::ALL.iter().any(|n| n.symbol() == key);
        if !known {
            return Err(ConfigError::UnknownKey(format!("params.{key}")));
        }
    }
    let mut params = ModelParams::zero();
    for name in ParamName::ALL {
        let key = format!("params.{}", name.symbol());
        match obj.get(name.symbol()) {
            Some(v) => {
                let value = as_number(v, &key)?;
                params.set(name, value).map_err(|e| out_of_range(&key, e))?;
            }
            None if OPTIONAL_PARAMS.contains(&name) => {}
            None => return Err(ConfigError::MissingField(key)),
        }
    }
    Ok(params)
}

fn parse_initial(v: &Value) -> Result<StrategyState, ConfigError> {
    let wrong = || ConfigError::WrongType {
        key: "initial".into(),
        expected: "an array of three numbers",
    };
    let items = v.as_array().ok_or_else(wrong)?;
    if items.len() != 3 {
        return Err(wrong());
    }
    let mut coords = [0.0; 3];
    for (slot, item) in coords.iter_mut().zip(items) {
        *slot = item.as_f64().ok_or_else(wrong)?;
    }
    StrategyState::from_array(coords).map_err(|e| out_of_range("initial", e))
}

fn parse_integrator(obj: &Map<String, Value>) -> Result<IntegratorConfig, ConfigError> {
    reject_unknown(
        obj,
        "integrator.",
        &[
            "dt",
            "t_max",
            "convergence_eps",
            "convergence_window",
            "threshold",
            "stop_on_convergence",
        ],
    )?;
    let mut cfg = IntegratorConfig::default();
    let num = |key: &str| {
        obj.get(key)
            .map(|v| as_number(v, &format!("integrator.{key}")))
            .transpose()
    };
    if let Some(v) = num("dt")? {
        cfg.dt = v;
    }
    if let Some(v) = num("t_max")? {
        cfg.t_max = v;
    }
    if let Some(v) = num("convergence_eps")? {
        cfg.convergence_eps = v;
    }
    if let Some(v) = num("threshold")? {
        cfg.threshold = v;
    }
    if let Some(v) = obj.get("convergence_window") {
        cfg.convergence_window = v.as_u64().ok_or(ConfigError::WrongType {
            key: "integrator.convergence_window".into(),
            expected: "a non-negative integer",
        })? as usize;
    }
    if let Some(v) = obj.get("stop_on_convergence") {
        cfg.stop_on_convergence = v.as_bool().ok_or(ConfigError::WrongType {
            key: "integrator.stop_on_convergence".into(),
            expected: "a boolean",
        })?;
    }
    cfg.validate().map_err(|e| out_of_range("integrator", e))?;
    Ok(cfg)
}

fn parse_outputs(v: &Value) -> Result<Vec<OutputSink>, ConfigError> {
    let items = v.as_array().ok_or(ConfigError::WrongType {
        key: "outputs".into(),
        expected: "an array",
    })?;
    if items.is_empty() {
        return Err(out_of_range(
            "outputs",
            "at least one output sink is required",
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let prefix = format!("outputs[{i}]");
            let obj = as_object(item, &prefix)?;
            reject_unknown(obj, &format!("{prefix}."), &["format", "path"])?;
            let format_key = format!("{prefix}.format");
            let format = match as_str(
                obj.get("format")
                    .ok_or_else(|| ConfigError::MissingField(format_key.clone()))?,
                &format_key,
            )? {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                "svg" => OutputFormat::Svg,
                other => {
                    return Err(out_of_range(
                        format_key,
                        format!("unknown format `{other}`"),
                    ))
                }
            };
            let path_key = format!("{prefix}.path");
            let path = as_str(
                obj.get("path")
                    .ok_or_else(|| ConfigError::MissingField(path_key.clone()))?,
                &path_key,
            )?;
            if path.is_empty() {
                return Err(out_of_range(path_key, "path must not be empty"));
            }
            Ok(OutputSink {
                format,
                path: PathBuf::from(path),
            })
        })
        .collect()
}

/// Parses and validates a run configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    let root = as_object(&doc, "<root>")?;
    reject_unknown(
        root,
        "",
        &["preset", "params", "initial", "integrator", "outputs"],
    )?;

    let source = match (root.get("preset"), root.get("params")) {
        (Some(_), Some(_)) => return Err(ConfigError::MutuallyExclusive("preset", "params")),
        (None, None) => return Err(ConfigError::MissingField("params".into())),
        (Some(name), None) => {
            let name = as_str(name, "preset")?;
            ParamSource::Preset(name.parse().map_err(|e| out_of_range("preset", e))?)
        }
        (None, Some(params)) => ParamSource::Explicit(parse_params(as_object(params, "params")?)?),
    };
    let initial = match root.get("initial") {
        Some(v) => parse_initial(v)?,
        None => match source {
            ParamSource::Preset(name) => preset(name).initial,
            ParamSource::Explicit(_) => StrategyState::center(),
        },
    };
    let integrator = match root.get("integrator") {
        Some(v) => parse_integrator(as_object(v, "integrator")?)?,
        None => IntegratorConfig::default(),
    };
    let outputs = parse_outputs(
        root.get("outputs")
            .ok_or_else(|| ConfigError::MissingField("outputs".into()))?,
    )?;
    Ok(RunConfig {
        source,
        initial,
        integrator,
        outputs,
    })
}
