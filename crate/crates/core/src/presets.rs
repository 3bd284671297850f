//! Reference parameter scenarios.
//!
//! `Condition1`..`Condition3` each make exactly one vertex evolutionarily
//! stable: (0,0,1), (1,0,1) and (1,1,1) respectively. `Table5` is the
//! Condition-1 baseline used for the sensitivity sweeps; it differs from
//! `Condition1` only in `C_LF` (30 instead of 35). The two cost terms that
//! cancel out of the dynamics (`C_MC`, `E_RF`) are zero everywhere.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::StrategyState;
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetName {
    Condition1,
    Condition2,
    Condition3,
    Table5,
}

impl PresetName {
    pub const ALL: [PresetName; 4] = [
        PresetName::Condition1,
        PresetName::Condition2,
        PresetName::Condition3,
        PresetName::Table5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::Condition1 => "Condition1",
            PresetName::Condition2 => "Condition2",
            PresetName::Condition3 => "Condition3",
            PresetName::Table5 => "Table5",
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioPreset {
    pub name: PresetName,
    pub params: ModelParams,
    pub initial: StrategyState,
}

impl ScenarioPreset {
    pub fn with_initial(mut self, initial: StrategyState) -> Self {
        self.initial = initial;
        self
    }
}

//                         I_J  C_LC T_RJ C_HJ C_LF C_DJ C_MJ C_SJ C_IF B_SP C_SC C_MC E_RF
const CONDITION1: [f64; 13] = [
    20.0, 8.0, 5.0, 10.0, 35.0, 3.0, 6.0, 30.0, 1.0, 1.0, 30.0, 0.0, 0.0,
];
const CONDITION2: [f64; 13] = [
    20.0, 8.0, 5.0, 10.0, 20.0, 3.0, 6.0, 30.0, 1.0, 1.0, 30.0, 0.0, 0.0,
];
const CONDITION3: [f64; 13] = [
    20.0, 10.0, 5.0, 10.0, 5.0, 3.0, 6.0, 80.0, 1.0, 1.0, 10.0, 0.0, 0.0,
];
const TABLE5: [f64; 13] = [
    20.0, 8.0, 5.0, 10.0, 30.0, 3.0, 6.0, 30.0, 1.0, 1.0, 30.0, 0.0, 0.0,
];

pub fn preset(name: PresetName) -> ScenarioPreset {
    let values = match name {
        PresetName::Condition1 => CONDITION1,
        PresetName::Condition2 => CONDITION2,
        PresetName::Condition3 => CONDITION3,
        PresetName::Table5 => TABLE5,
    };
    ScenarioPreset {
        name,
        params: ModelParams::new(values).expect("preset values are valid"),
        initial: StrategyState::center(),
    }
}

/// Looks a preset up by name (case-insensitive).
pub fn preset_by_name(name: &str) -> Result<ScenarioPreset> {
    Ok(preset(name.parse()?))
}
