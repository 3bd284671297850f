//! Command-line surface.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tripartite_core::{
    build_payoff_matrix, check_claim, default_sign_tolerance, detect_convergence, integrate,
    preset_by_name, reference_claims, run_sweep, speed_ordering, stability_report, Axis,
    CountriesMove, FisheriesMove, GovernmentMove, IntegratorConfig, ModelParams, NamedSweep,
    ParamName, ScenarioPreset, StrategyState, SweepAxis, SweepResult, SweepSpec,
};

use crate::config::{parse_config, OutputFormat, OutputSink};
use crate::csv::write_trajectory_csv;
use crate::error::CliError;
use crate::format::fmt_num;
use crate::report::{sweep_summary_json, write_report_json, AxisOrdering};
use crate::svg::{render_chart_svg, ChartSpec, Series};

#[derive(Debug, Parser)]
#[command(
    name = "tripartite",
    version,
    about = "Replicator dynamics of the treated-water discharge game"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one scenario and write its trajectory.
    Simulate(SimulateArgs),
    /// Classify every equilibrium and print the JSON report.
    Stability(StabilityArgs),
    /// List the nine candidate equilibria and their feasibility.
    Equilibria(ScenarioArgs),
    /// Run a named or custom one-parameter sweep.
    Sweep(SweepArgs),
    /// Print the payoff table with the parameters substituted.
    Payoff(ScenarioArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Scenario preset: Condition1, Condition2, Condition3 or Table5.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// JSON run configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override one parameter, e.g. `C_SJ=35`. Repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Initial strategy mix `x,y,z`.
    #[arg(long, value_name = "X,Y,Z", allow_hyphen_values = true)]
    pub initial: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    #[arg(long = "t-max", allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// Convergence tolerance (max-norm distance to the limit vertex).
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long = "out-csv")]
    pub out_csv: Option<PathBuf>,
    #[arg(long = "out-svg")]
    pub out_svg: Option<PathBuf>,
    /// Stability report for the simulated parameters.
    #[arg(long = "out-json")]
    pub out_json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long = "out-json")]
    pub out_json: Option<PathBuf>,
    /// Eigenvalue sign tolerance; defaults to 1e-9 times the parameter scale.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Named sweep: cdj, csj, clc, clf, chj or initial.
    #[arg(long, conflicts_with = "vary")]
    pub name: Option<String>,
    /// Parameter to vary in a custom sweep.
    #[arg(long, requires = "values")]
    pub vary: Option<String>,
    /// Comma-separated values for `--vary`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub values: Vec<f64>,
    /// Directory receiving per-variant CSV files, charts and the summary.
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
}

/// A fully resolved scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub params: ModelParams,
    pub initial: StrategyState,
    pub config: IntegratorConfig,
    pub outputs: Vec<OutputSink>,
}

fn parse_override(spec: &str) -> Result<(ParamName, f64), CliError> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--param expects NAME=VALUE, got `{spec}`")))?;
    let name: ParamName = name.parse()?;
    let value = value.trim().parse().map_err(|_| {
        CliError::Usage(format!(
            "--param {}: `{value}` is not a number",
            name.symbol()
        ))
    })?;
    Ok((name, value))
}

fn parse_triple(text: &str) -> Result<StrategyState, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || CliError::Usage(format!("--initial expects x,y,z, got `{text}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut coords = [0.0; 3];
    for (slot, part) in coords.iter_mut().zip(parts) {
        *slot = part.trim().parse().map_err(|_| bad())?;
    }
    Ok(StrategyState::from_array(coords)?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

impl ScenarioArgs {
    /// Resolves the scenario; `default` is used when neither a preset nor a
    /// config file is given.
    pub fn resolve(&self, default: &str) -> Result<Scenario, CliError> {
        let (mut params, mut initial, mut config, outputs) = match (&self.preset, &self.config) {
            (_, Some(path)) => {
                let cfg = parse_config(&read_file(path)?)?;
                (
                    cfg.source.params(),
                    cfg.initial,
                    cfg.integrator,
                    cfg.outputs,
                )
            }
            (name, None) => {
                let ScenarioPreset {
                    params, initial, ..
                } = preset_by_name(name.as_deref().unwrap_or(default))?;
                (params, initial, IntegratorConfig::default(), Vec::new())
            }
        };
        for spec in &self.params {
            let (name, value) = parse_override(spec)?;
            params.set(name, value)?;
        }
        if let Some(text) = &self.initial {
            initial = parse_triple(text)?;
        }
        if let Some(dt) = self.dt {
            config.dt = dt;
        }
        if let Some(t_max) = self.t_max {
            config.t_max = t_max;
        }
        if let Some(eps) = self.eps {
            config.convergence_eps = eps;
        }
        config.validate()?;
        Ok(Scenario {
            params,
            initial,
            config,
            outputs,
        })
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn check_distinct(sinks: &[OutputSink]) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for s in sinks {
        if !seen.insert(&s.path) {
            return Err(CliError::Validation(format!(
                "output path {} is used twice",
                s.path.display()
            )));
        }
    }
    Ok(())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

fn state_text(s: &StrategyState) -> String {
    let [x, y, z] = s.to_array().map(fmt_num);
    format!("({x}, {y}, {z})")
}

fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sc = args.scenario.resolve("Condition1")?;
    let mut sinks = sc.outputs.clone();
    for (path, format) in [
        (&args.out_csv, OutputFormat::Csv),
        (&args.out_svg, OutputFormat::Svg),
        (&args.out_json, OutputFormat::Json),
    ] {
        if let Some(path) = path {
            sinks.push(OutputSink {
                format,
                path: path.clone(),
            });
        }
    }
    check_distinct(&sinks)?;

    let traj = integrate(&sc.params, sc.initial, &sc.config)?;
    let convergence = detect_convergence(&traj)?;
    if sinks.is_empty() {
        return emit(out, &write_trajectory_csv(&traj)?);
    }
    for sink in &sinks {
        let text = match sink.format {
            OutputFormat::Csv => write_trajectory_csv(&traj)?,
            OutputFormat::Svg => {
                render_chart_svg(&ChartSpec::from_trajectory("Strategy evolution", &traj))
                    .map_err(|e| CliError::Validation(e.to_string()))?
            }
            OutputFormat::Json => write_report_json(
                &sc.params,
                &stability_report(&sc.params, default_sign_tolerance(&sc.params)),
            ),
        };
        write_file(&sink.path, &text)?;
    }
    let last = traj.last().expect("trajectory has samples");
    let mut summary = format!("t = {}: {}\n", fmt_num(last.t), state_text(&last.state));
    match (convergence.limit, convergence.t_converge) {
        (Some(limit), Some(t)) => summary.push_str(&format!(
            "converged to {} {} by t = {}\n",
            limit.label,
            state_text(&limit.coords),
            fmt_num(t)
        )),
        _ => summary.push_str("did not converge to a vertex\n"),
    }
    emit(out, &summary)
}

fn stability(args: &StabilityArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sc = args.scenario.resolve("Condition1")?;
    let tolerance = args
        .tolerance
        .unwrap_or_else(|| default_sign_tolerance(&sc.params));
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(CliError::Validation(format!(
            "tolerance must be finite and non-negative, got {tolerance}"
        )));
    }
    let text = write_report_json(&sc.params, &stability_report(&sc.params, tolerance));
    match &args.out_json {
        Some(path) => write_file(path, &text),
        None => emit(out, &text),
    }
}

fn equilibria(args: &ScenarioArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sc = args.resolve("Condition1")?;
    let report = stability_report(&sc.params, default_sign_tolerance(&sc.params));
    let mut text = format!(
        "{:<8} {:<16} {:<11} {:<6} {:<14} {}\n",
        "label", "coordinates", "status", "signs", "class", "eigenvalues"
    );
    let rows = report.vertices.iter().chain(report.interior_report.iter());
    for r in rows {
        let eigs: Vec<String> = r
            .eigenvalues
            .iter()
            .map(|e| {
                if e.im == 0.0 {
                    fmt_num(e.re)
                } else {
                    format!("{}{:+}i", fmt_num(e.re), fmt_num(e.im))
                }
            })
            .collect();
        text.push_str(&format!(
            "{:<8} {:<16} {:<11} {:<6} {:<14} {}\n",
            r.point.label.name(),
            state_text(&r.point.coords),
            "feasible",
            r.sign_pattern(),
            r.classification.as_str(),
            eigs.join(", ")
        ));
    }
    if report.interior_report.is_none() {
        let detail = match &report.interior {
            tripartite_core::InteriorOutcome::Infeasible { x_star } => {
                format!("x* = {}", fmt_num(*x_star))
            }
            tripartite_core::InteriorOutcome::Inconsistent { .. } => {
                "conditions disagree".to_string()
            }
            tripartite_core::InteriorOutcome::Degenerate(why) => why.to_string(),
            tripartite_core::InteriorOutcome::Feasible(_) => unreachable!(),
        };
        text.push_str(&format!(
            "{:<8} {:<16} {:<11} {}\n",
            "gamma9",
            "-",
            report.interior.status(),
            detail
        ));
    }
    emit(out, &text)
}

fn government_label(m: GovernmentMove) -> &'static str {
    match m {
        GovernmentMove::Discharge => "discharge",
        GovernmentMove::NoDischarge => "no discharge",
    }
}

fn countries_label(m: CountriesMove) -> &'static str {
    match m {
        CountriesMove::Sanction => "sanction",
        CountriesMove::NoSanction => "no sanction",
    }
}

fn fisheries_label(m: FisheriesMove) -> &'static str {
    match m {
        FisheriesMove::Oppose => "oppose",
        FisheriesMove::Accept => "accept",
    }
}

fn payoff(args: &ScenarioArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sc = args.resolve("Condition1")?;
    let m = build_payoff_matrix(&sc.params);
    let mut text = format!(
        "{:<13} {:<12} {:<9} {:>12} {:>12} {:>12}\n",
        "government", "countries", "fisheries", "government", "countries", "fisheries"
    );
    for (g, c, f, cell) in m.iter() {
        text.push_str(&format!(
            "{:<13} {:<12} {:<9} {:>12} {:>12} {:>12}\n",
            government_label(g),
            countries_label(c),
            fisheries_label(f),
            fmt_num(cell.government),
            fmt_num(cell.countries),
            fmt_num(cell.fisheries)
        ));
    }
    emit(out, &text)
}

fn sweep_charts(result: &SweepResult, name: &str) -> Result<Vec<(Axis, String)>, CliError> {
    Axis::ALL
        .into_iter()
        .map(|axis| {
            let spec = ChartSpec {
                title: format!("{name}: evolution of {}", axis.letter()),
                x_label: "t".into(),
                y_label: axis.letter().to_string(),
                series: result
                    .variants
                    .iter()
                    .map(|v| Series {
                        name: v.value.to_string(),
                        points: v.trajectory.series(axis),
                    })
                    .collect(),
            };
            render_chart_svg(&spec)
                .map(|svg| (axis, svg))
                .map_err(|e| CliError::Validation(e.to_string()))
        })
        .collect()
}

fn sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let sc = args.scenario.resolve("Table5")?;
    let base = ScenarioPreset {
        name: tripartite_core::PresetName::Table5,
        params: sc.params,
        initial: sc.initial,
    };
    let (label, axis, named) = match (&args.name, &args.vary) {
        (Some(name), None) => {
            let named: NamedSweep = name.parse()?;
            (named.key().to_string(), named.axis(), Some(named))
        }
        (None, Some(param)) => {
            let param: ParamName = param.parse()?;
            let axis = SweepAxis::Parameter {
                name: param,
                values: args.values.clone(),
            };
            (
                param.symbol().to_ascii_lowercase().replace('_', ""),
                axis,
                None,
            )
        }
        _ => {
            return Err(CliError::Usage(
                "sweep needs either --name or --vary with --values".into(),
            ))
        }
    };
    let spec = SweepSpec {
        base,
        axis,
        config: sc.config,
    };
    let result = run_sweep(&spec)?;

    let orderings: Vec<AxisOrdering> =
        match result.variants.iter().find_map(|v| v.convergence.limit) {
            Some(limit) => Axis::ALL
                .into_iter()
                .map(|a| {
                    (
                        a,
                        speed_ordering(&result, a, limit.coords.get(a)).map_err(|e| e.to_string()),
                    )
                })
                .collect(),
            None => Axis::ALL
                .into_iter()
                .map(|a| (a, Err("no variant converged".to_string())))
                .collect(),
        };
    let notes: Vec<Value> = match named {
        Some(named) => reference_claims()
            .into_iter()
            .filter(|c| c.sweep == named)
            .map(|claim| {
                let base = json!({
                    "axis": claim.axis.letter().to_string(),
                    "expected": claim.expected.as_str(),
                    "forced": claim.forced,
                });
                let mut note = base.as_object().cloned().expect("object");
                match check_claim(&result, claim) {
                    Ok(n) => {
                        note.insert("observed".into(), Value::from(n.observed.as_str()));
                        note.insert("agrees".into(), Value::from(n.agrees));
                    }
                    Err(e) => {
                        note.insert("error".into(), Value::from(e.to_string()));
                    }
                }
                Value::Object(note)
            })
            .collect(),
        None => Vec::new(),
    };

    let Some(dir) = &args.out_dir else {
        return emit(
            out,
            &sweep_summary_json(&label, &result, &orderings, &notes, &[])?,
        );
    };
    let mut files = Vec::new();
    for (i, run) in result.variants.iter().enumerate() {
        let file = format!("{label}_{i}.csv");
        write_file(&dir.join(&file), &write_trajectory_csv(&run.trajectory)?)?;
        files.push(file);
    }
    for (axis, svg) in sweep_charts(&result, &label)? {
        write_file(&dir.join(format!("{label}_{}.svg", axis.letter())), &svg)?;
    }
    let summary_path = dir.join(format!("{label}_summary.json"));
    write_file(
        &summary_path,
        &sweep_summary_json(&label, &result, &orderings, &notes, &files)?,
    )?;

    let mut text = format!(
        "{} variants of {}; summary in {}\n",
        result.variants.len(),
        spec.axis.label(),
        summary_path.display()
    );
    for (i, run) in result.failures() {
        text.push_str(&format!("variant {i} ({}) did not converge\n", run.value));
    }
    for (axis, ordering) in &orderings {
        match ordering {
            Ok(o) => text.push_str(&format!("{}: settle time {}\n", axis.letter(), o.trend())),
            Err(e) => text.push_str(&format!("{}: {e}\n", axis.letter())),
        }
    }
    for note in &notes {
        if note["agrees"] == Value::Bool(false) {
            text.push_str(&format!(
                "note: {} expected {}, observed {}\n",
                note["axis"].as_str().unwrap_or("?"),
                note["expected"].as_str().unwrap_or("?"),
                note["observed"].as_str().unwrap_or("?")
            ));
        }
    }
    emit(out, &text)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => simulate(a, out),
        Command::Stability(a) => stability(a, out),
        Command::Equilibria(a) => equilibria(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Payoff(a) => payoff(a, out),
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
