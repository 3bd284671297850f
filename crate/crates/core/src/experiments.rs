//! One-dimensional sensitivity sweeps over a scenario preset.
//!
//! A sweep varies one parameter (or the initial strategy mix) while keeping
//! everything else at the base preset, integrates each variant, and measures
//! how quickly each coordinate settles on its limit. Variants are independent
//! and run in parallel; results keep input order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{
    detect_convergence, integrate, time_to_threshold, ConvergenceResult, IntegratorConfig,
    Trajectory,
};
use crate::error::{Error, Result};
use crate::game::{Axis, StrategyState};
use crate::params::{ModelParams, ParamName};
use crate::presets::{preset, PresetName, ScenarioPreset};

#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    Parameter { name: ParamName, values: Vec<f64> },
    Initial(Vec<StrategyState>),
}

impl SweepAxis {
    pub fn len(&self) -> usize {
        match self {
            SweepAxis::Parameter { values, .. } => values.len(),
            SweepAxis::Initial(states) => states.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn values(&self) -> Vec<SweepValue> {
        match self {
            SweepAxis::Parameter { values, .. } => {
                values.iter().copied().map(SweepValue::Scalar).collect()
            }
            SweepAxis::Initial(states) => states.iter().copied().map(SweepValue::Initial).collect(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SweepAxis::Parameter { name, .. } => name.symbol().to_string(),
            SweepAxis::Initial(_) => "initial".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepValue {
    Scalar(f64),
    Initial(StrategyState),
}

impl SweepValue {
    /// Key used to order variants when reporting speed along `axis`.
    fn sort_key(&self, axis: Axis) -> f64 {
        match self {
            SweepValue::Scalar(v) => *v,
            SweepValue::Initial(s) => s.get(axis),
        }
    }
}

impl fmt::Display for SweepValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepValue::Scalar(v) => write!(f, "{v}"),
            SweepValue::Initial(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: ScenarioPreset,
    pub axis: SweepAxis,
    pub config: IntegratorConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axis.is_empty() {
            return Err(Error::EmptySweep);
        }
        self.config.validate()?;
        for value in self.axis.values() {
            self.variant(value)?;
        }
        Ok(())
    }

    fn variant(&self, value: SweepValue) -> Result<(ModelParams, StrategyState)> {
        match (&self.axis, value) {
            (SweepAxis::Parameter { name, .. }, SweepValue::Scalar(v)) => {
                Ok((self.base.params.with(*name, v)?, self.base.initial))
            }
            (_, SweepValue::Initial(s)) => Ok((self.base.params, s)),
            (SweepAxis::Initial(_), SweepValue::Scalar(_)) => {
                unreachable!("initial sweeps carry states")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantRun {
    pub value: SweepValue,
    pub params: ModelParams,
    pub initial: StrategyState,
    pub trajectory: Trajectory,
    pub convergence: ConvergenceResult,
    /// Time for each coordinate to settle within `config.threshold` of the
    /// limit vertex; `None` when the variant did not converge.
    pub settle_times: [Option<f64>; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub variants: Vec<VariantRun>,
}

impl SweepResult {
    /// Variants that did not settle on a vertex, with their input index.
    pub fn failures(&self) -> impl Iterator<Item = (usize, &VariantRun)> {
        self.variants
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.convergence.converged)
    }

    pub fn all_converged_to(&self, target: &StrategyState) -> bool {
        self.variants
            .iter()
            .all(|v| v.convergence.limit.map(|l| l.coords) == Some(*target))
    }
}

fn run_variant(spec: &SweepSpec, value: SweepValue) -> Result<VariantRun> {
    let (params, initial) = spec.variant(value)?;
    let trajectory = integrate(&params, initial, &spec.config)?;
    let convergence = detect_convergence(&trajectory)?;
    let settle_times = match convergence.limit {
        Some(limit) => Axis::ALL.map(|axis| {
            time_to_threshold(
                &trajectory,
                axis,
                limit.coords.get(axis),
                spec.config.threshold,
            )
        }),
        None => [None; 3],
    };
    Ok(VariantRun {
        value,
        params,
        initial,
        trajectory,
        convergence,
        settle_times,
    })
}

/// Integrates every variant of the sweep. Non-converged variants are kept in
/// the result (see [`SweepResult::failures`]); integration errors abort.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let variants = spec
        .axis
        .values()
        .into_par_iter()
        .map(|value| run_variant(spec, value))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        spec: spec.clone(),
        variants,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    /// Spread no larger than [`FLAT_SPREAD`] of the mean.
    Flat,
    Mixed,
}

impl Trend {
    pub fn as_str(self) -> &'static str {
        match self {
            Trend::Increasing => "increasing",
            Trend::Decreasing => "decreasing",
            Trend::Flat => "flat",
            Trend::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Relative spread below which settle times count as unchanged.
pub const FLAT_SPREAD: f64 = 0.10;

#[derive(Debug, Clone, PartialEq)]
pub struct SpeedOrdering {
    pub axis: Axis,
    pub target: f64,
    /// `(value, settle time)` sorted by the swept value (for initial-state
    /// sweeps, by the initial value of `axis`).
    pub pairs: Vec<(SweepValue, f64)>,
    pub strictly_increasing: bool,
    pub strictly_decreasing: bool,
}

impl SpeedOrdering {
    /// Qualitative trend of the settle times. Neighbouring ties count as
    /// monotone because times are quantised to the step size.
    pub fn trend(&self) -> Trend {
        let times: Vec<f64> = self.pairs.iter().map(|p| p.1).collect();
        let (lo, hi) = times
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &t| {
                (l.min(t), h.max(t))
            });
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let rising = times.windows(2).all(|w| w[1] >= w[0]);
        let falling = times.windows(2).all(|w| w[1] <= w[0]);
        if hi - lo <= FLAT_SPREAD * mean {
            Trend::Flat
        } else if rising {
            Trend::Increasing
        } else if falling {
            Trend::Decreasing
        } else {
            Trend::Mixed
        }
    }
}

/// Settle times of `axis` towards `target`, ordered by swept value.
pub fn speed_ordering(result: &SweepResult, axis: Axis, target: f64) -> Result<SpeedOrdering> {
    let threshold = result.spec.config.threshold;
    let mut pairs = Vec::with_capacity(result.variants.len());
    for (index, run) in result.variants.iter().enumerate() {
        let not_converged = || Error::VariantNotConverged {
            index,
            value: run.value.to_string(),
        };
        if !run.convergence.converged {
            return Err(not_converged());
        }
        let t = time_to_threshold(&run.trajectory, axis, target, threshold)
            .ok_or_else(not_converged)?;
        pairs.push((run.value, t));
    }
    pairs.sort_by(|a, b| a.0.sort_key(axis).total_cmp(&b.0.sort_key(axis)));
    let strictly_increasing = pairs.windows(2).all(|w| w[1].1 > w[0].1);
    let strictly_decreasing = pairs.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(SpeedOrdering {
        axis,
        target,
        pairs,
        strictly_increasing,
        strictly_decreasing,
    })
}

/// The standard one-dimensional sweeps, all on the `Table5` baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSweep {
    DischargeCost,
    StorageCost,
    CountriesCompensation,
    FisheriesCompensation,
    ForeignAid,
    InitialStrategy,
}

impl NamedSweep {
    pub const ALL: [NamedSweep; 6] = [
        NamedSweep::DischargeCost,
        NamedSweep::StorageCost,
        NamedSweep::CountriesCompensation,
        NamedSweep::FisheriesCompensation,
        NamedSweep::ForeignAid,
        NamedSweep::InitialStrategy,
    ];

    pub fn key(self) -> &'static str {
        match self {
            NamedSweep::DischargeCost => "cdj",
            NamedSweep::StorageCost => "csj",
            NamedSweep::CountriesCompensation => "clc",
            NamedSweep::FisheriesCompensation => "clf",
            NamedSweep::ForeignAid => "chj",
            NamedSweep::InitialStrategy => "initial",
        }
    }

    pub fn axis(self) -> SweepAxis {
        let param = |name, values: &[f64]| SweepAxis::Parameter {
            name,
            values: values.to_vec(),
        };
        match self {
            NamedSweep::DischargeCost => {
                param(ParamName::DischargeCost, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
            }
            NamedSweep::StorageCost => param(
                ParamName::StorageCost,
                &[25.0, 27.0, 29.0, 31.0, 33.0, 35.0],
            ),
            NamedSweep::CountriesCompensation => param(
                ParamName::CountriesCompensation,
                &[1.0, 5.0, 15.0, 20.0, 25.0, 30.0],
            ),
            NamedSweep::FisheriesCompensation => param(
                ParamName::FisheriesCompensation,
                &[30.0, 32.0, 34.0, 36.0, 38.0, 40.0],
            ),
            NamedSweep::ForeignAid => param(ParamName::ForeignAid, &[5.0, 9.0, 13.0, 17.0]),
            NamedSweep::InitialStrategy => SweepAxis::Initial(
                [
                    (0.5, 0.5, 0.5),
                    (0.8, 0.1, 0.1),
                    (0.2, 0.7, 0.1),
                    (0.7, 0.2, 0.1),
                ]
                .map(|(x, y, z)| StrategyState::new(x, y, z).expect("valid initial state"))
                .to_vec(),
            ),
        }
    }

    pub fn spec(self, config: IntegratorConfig) -> SweepSpec {
        SweepSpec {
            base: preset(PresetName::Table5),
            axis: self.axis(),
            config,
        }
    }
}

impl fmt::Display for NamedSweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for NamedSweep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().replace('_', "").to_ascii_lowercase();
        NamedSweep::ALL
            .into_iter()
            .find(|n| n.key() == wanted)
            .ok_or_else(|| Error::UnknownSweep(s.to_string()))
    }
}

/// A qualitative speed claim attached to a named sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpeedClaim {
    pub sweep: NamedSweep,
    pub axis: Axis,
    /// Expected trend of the settle time (a faster evolution is a decreasing time).
    pub expected: Trend,
    /// True when the ordering follows from how the swept parameter enters
    /// the field, false for coupled effects.
    pub forced: bool,
}

/// Every speed claim made for the named sweeps, against the `(0,0,1)` limit.
pub fn reference_claims() -> Vec<SpeedClaim> {
    use Axis::*;
    use NamedSweep::*;
    use Trend::*;
    let claim = |sweep, axis, expected, forced| SpeedClaim {
        sweep,
        axis,
        expected,
        forced,
    };
    vec![
        claim(DischargeCost, X, Decreasing, true),
        claim(DischargeCost, Y, Flat, false),
        claim(DischargeCost, Z, Increasing, false),
        claim(StorageCost, X, Increasing, true),
        claim(StorageCost, Y, Flat, false),
        claim(StorageCost, Z, Decreasing, false),
        claim(CountriesCompensation, X, Increasing, false),
        claim(CountriesCompensation, Y, Increasing, false),
        claim(CountriesCompensation, Z, Increasing, false),
        claim(FisheriesCompensation, X, Decreasing, true),
        claim(FisheriesCompensation, Y, Flat, false),
        claim(FisheriesCompensation, Z, Increasing, false),
        claim(ForeignAid, X, Increasing, false),
        claim(ForeignAid, Y, Decreasing, false),
        claim(ForeignAid, Z, Decreasing, false),
        claim(InitialStrategy, X, Increasing, false),
        claim(InitialStrategy, Y, Increasing, false),
        claim(InitialStrategy, Z, Increasing, false),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproductionNote {
    pub claim: SpeedClaim,
    pub ordering: SpeedOrdering,
    pub observed: Trend,
    pub agrees: bool,
}

/// Compares a claim with the sweep outcome. Targets are the `(0,0,1)` vertex.
pub fn check_claim(result: &SweepResult, claim: SpeedClaim) -> Result<ReproductionNote> {
    let target = StrategyState::vertex(false, false, true).get(claim.axis);
    let ordering = speed_ordering(result, claim.axis, target)?;
    let observed = ordering.trend();
    Ok(ReproductionNote {
        claim,
        observed,
        agrees: observed == claim.expected,
        ordering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> IntegratorConfig {
        IntegratorConfig {
            t_max: 60.0,
            ..Default::default()
        }
    }

    #[test]
    fn named_sweep_grids() {
        assert_eq!(NamedSweep::ForeignAid.axis().len(), 4);
        assert_eq!(NamedSweep::CountriesCompensation.axis().len(), 6);
        assert_eq!(
            "CLF".parse::<NamedSweep>().unwrap(),
            NamedSweep::FisheriesCompensation
        );
        assert!(matches!(
            "nope".parse::<NamedSweep>(),
            Err(Error::UnknownSweep(_))
        ));
        match NamedSweep::StorageCost.axis() {
            SweepAxis::Parameter { name, values } => {
                assert_eq!(name, ParamName::StorageCost);
                assert_eq!(values, vec![25.0, 27.0, 29.0, 31.0, 33.0, 35.0]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_sweep_is_rejected() {
        let spec = SweepSpec {
            base: preset(PresetName::Table5),
            axis: SweepAxis::Parameter {
                name: ParamName::DischargeCost,
                values: vec![],
            },
            config: quick(),
        };
        assert_eq!(run_sweep(&spec).unwrap_err(), Error::EmptySweep);
    }

    #[test]
    fn invalid_values_are_rejected() {
        let spec = SweepSpec {
            base: preset(PresetName::Table5),
            axis: SweepAxis::Parameter {
                name: ParamName::DischargeCost,
                values: vec![1.0, -2.0],
            },
            config: quick(),
        };
        assert!(matches!(
            run_sweep(&spec),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn discharge_sweep_orders_by_value() {
        let result = run_sweep(&NamedSweep::DischargeCost.spec(quick())).unwrap();
        assert_eq!(result.variants.len(), 6);
        assert!(result.all_converged_to(&StrategyState::vertex(false, false, true)));
        assert_eq!(result.failures().count(), 0);
        for (run, expected) in result.variants.iter().zip([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]) {
            assert_eq!(run.value, SweepValue::Scalar(expected));
            assert_eq!(run.params.discharge_cost(), expected);
        }
        let order = speed_ordering(&result, Axis::X, 0.0).unwrap();
        assert!(order.strictly_decreasing, "{:?}", order.pairs);
        assert_eq!(order.trend(), Trend::Decreasing);
    }

    #[test]
    fn non_converged_variant_is_kept_and_reported() {
        let spec = SweepSpec {
            base: preset(PresetName::Table5),
            axis: SweepAxis::Parameter {
                name: ParamName::DischargeCost,
                values: vec![3.0, 4.0],
            },
            config: IntegratorConfig {
                t_max: 0.2,
                ..Default::default()
            },
        };
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.variants.len(), 2);
        assert_eq!(result.failures().count(), 2);
        assert!(matches!(
            speed_ordering(&result, Axis::X, 0.0),
            Err(Error::VariantNotConverged { index: 0, .. })
        ));
    }

    #[test]
    fn initial_sweep_sorts_by_matching_coordinate() {
        let result = run_sweep(&NamedSweep::InitialStrategy.spec(quick())).unwrap();
        let order = speed_ordering(&result, Axis::X, 0.0).unwrap();
        let keys: Vec<f64> = order.pairs.iter().map(|p| p.0.sort_key(Axis::X)).collect();
        assert_eq!(keys, vec![0.2, 0.5, 0.7, 0.8]);
    }

    #[test]
    fn trend_classification() {
        let mk = |times: &[f64], inc: bool, dec: bool| SpeedOrdering {
            axis: Axis::X,
            target: 0.0,
            pairs: times
                .iter()
                .enumerate()
                .map(|(i, &t)| (SweepValue::Scalar(i as f64), t))
                .collect(),
            strictly_increasing: inc,
            strictly_decreasing: dec,
        };
        assert_eq!(mk(&[1.0, 1.01, 1.02], true, false).trend(), Trend::Flat);
        assert_eq!(
            mk(&[1.0, 1.5, 1.5, 2.0], false, false).trend(),
            Trend::Increasing
        );
        assert_eq!(mk(&[1.0, 2.0, 3.0], true, false).trend(), Trend::Increasing);
        assert_eq!(mk(&[3.0, 2.0, 1.0], false, true).trend(), Trend::Decreasing);
        assert_eq!(mk(&[1.0, 3.0, 2.0], false, false).trend(), Trend::Mixed);
    }

    #[test]
    fn every_named_sweep_has_three_claims() {
        let claims = reference_claims();
        for sweep in NamedSweep::ALL {
            assert_eq!(claims.iter().filter(|c| c.sweep == sweep).count(), 3);
        }
    }
}
