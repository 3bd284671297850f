//! Trajectory CSV: a `t,x,y,z` header and one row per sample.

use tripartite_core::{Error as CoreError, Trajectory};

use crate::error::CliError;
use crate::format::fmt_num;

pub const HEADER: &str = "t,x,y,z";

pub fn write_trajectory_csv(traj: &Trajectory) -> Result<String, CoreError> {
    if traj.samples.is_empty() {
        return Err(CoreError::EmptyTrajectory);
    }
    let mut out = String::with_capacity(traj.samples.len() * 48);
    out.push_str(HEADER);
    out.push('\n');
    for s in &traj.samples {
        let [x, y, z] = s.state.to_array();
        for (i, v) in [s.t, x, y, z].into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&fmt_num(v));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses a trajectory CSV back into `[t, x, y, z]` rows.
pub fn read_trajectory_csv(text: &str) -> Result<Vec<[f64; 4]>, CliError> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(CliError::Validation(format!("expected header `{HEADER}`")));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let bad = || CliError::Validation(format!("malformed row {}: `{line}`", i + 1));
            let mut row = [0.0; 4];
            let mut fields = line.split(',');
            for slot in &mut row {
                *slot = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            }
            if fields.next().is_some() {
                return Err(bad());
            }
            Ok(row)
        })
        .collect()
}
