//! Fixed-step RK4 integration of the replicator system.

use crate::error::{Error, Result};
use crate::game::{field_raw, Axis, StrategyState};
use crate::params::ModelParams;
use crate::stability::{EquilibriumKind, EquilibriumLabel, EquilibriumPoint};

/// Largest clamp correction tolerated per step before the step is reported unstable.
pub const CLAMP_BUDGET: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_max: f64,
    /// Max-norm radius of the ball used to decide convergence to a vertex.
    pub convergence_eps: f64,
    /// Number of trailing samples that must sit inside the ball.
    pub convergence_window: usize,
    /// Band used by [`time_to_threshold`] in speed reports.
    pub threshold: f64,
    /// Stop integrating as soon as convergence is detected.
    pub stop_on_convergence: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            dt: 0.01,
            t_max: 200.0,
            convergence_eps: 1e-4,
            convergence_window: 100,
            threshold: 0.01,
            stop_on_convergence: false,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return fail(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_max >= self.dt && self.t_max.is_finite()) {
            return fail(format!("t_max must be at least dt, got {}", self.t_max));
        }
        if !(self.convergence_eps > 0.0 && self.convergence_eps.is_finite()) {
            return fail(format!(
                "convergence_eps must be positive, got {}",
                self.convergence_eps
            ));
        }
        if self.convergence_window < 1 {
            return fail("convergence_window must be at least 1".into());
        }
        if !(self.threshold > 0.0 && self.threshold < 0.5) {
            return fail(format!(
                "threshold must lie in (0, 0.5), got {}",
                self.threshold
            ));
        }
        Ok(())
    }

    /// Number of steps covering `[0, t_max]`.
    pub fn steps(&self) -> usize {
        (self.t_max / self.dt).round().max(1.0) as usize
    }
}

/// One classic fourth-order Runge-Kutta step, clamped back into the cube.
///
/// Faces of the cube are invariant, so any clamp larger than [`CLAMP_BUDGET`]
/// means the step size is too large for the dynamics and is reported as
/// [`Error::Instability`].
pub fn rk4_step(p: &ModelParams, s: &StrategyState, dt: f64) -> Result<StrategyState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let y0 = s.to_array();
    let offset = |k: &[f64; 3], h: f64| [y0[0] + h * k[0], y0[1] + h * k[1], y0[2] + h * k[2]];
    let k1 = field_raw(p, y0);
    let k2 = field_raw(p, offset(&k1, dt / 2.0));
    let k3 = field_raw(p, offset(&k2, dt / 2.0));
    let k4 = field_raw(p, offset(&k3, dt));

    let mut next = [0.0; 3];
    let mut correction = 0.0f64;
    for i in 0..3 {
        let raw = y0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if !raw.is_finite() {
            return Err(Error::Instability {
                t: f64::NAN,
                correction: f64::INFINITY,
                budget: CLAMP_BUDGET,
            });
        }
        let clamped = raw.clamp(0.0, 1.0);
        correction = correction.max((raw - clamped).abs());
        next[i] = clamped;
    }
    if correction > CLAMP_BUDGET {
        return Err(Error::Instability {
            t: f64::NAN,
            correction,
            budget: CLAMP_BUDGET,
        });
    }
    StrategyState::from_array(next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: StrategyState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub params: ModelParams,
    pub config: IntegratorConfig,
}

impl Trajectory {
    /// A trajectory that sits at `state` for `len` samples.
    pub fn constant(
        params: ModelParams,
        state: StrategyState,
        config: IntegratorConfig,
        len: usize,
    ) -> Self {
        let samples = (0..len.max(1))
            .map(|i| Sample {
                t: i as f64 * config.dt,
                state,
            })
            .collect();
        Trajectory {
            samples,
            params,
            config,
        }
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    pub fn final_state(&self) -> StrategyState {
        self.samples
            .last()
            .expect("trajectory always has an initial sample")
            .state
    }

    /// Keeps samples with `t <= t_end`.
    pub fn truncated(&self, t_end: f64) -> Trajectory {
        Trajectory {
            samples: self
                .samples
                .iter()
                .copied()
                .take_while(|s| s.t <= t_end + 1e-12)
                .collect(),
            params: self.params,
            config: self.config,
        }
    }

    /// Values of one coordinate as `(t, value)` pairs.
    pub fn series(&self, axis: Axis) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .map(|s| (s.t, s.state.get(axis)))
            .collect()
    }
}

/// Integrates from `initial` over `[0, t_max]`, recording every step.
pub fn integrate(
    p: &ModelParams,
    initial: StrategyState,
    config: &IntegratorConfig,
) -> Result<Trajectory> {
    config.validate()?;
    let steps = config.steps();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(Sample {
        t: 0.0,
        state: initial,
    });
    let mut state = initial;
    let mut inside_since: Option<usize> = None;
    for i in 1..=steps {
        let t = i as f64 * config.dt;
        state = rk4_step(p, &state, config.dt).map_err(|e| match e {
            Error::Instability {
                correction, budget, ..
            } => Error::Instability {
                t,
                correction,
                budget,
            },
            other => other,
        })?;
        samples.push(Sample { t, state });

        if config.stop_on_convergence {
            let near = state.distance(&state.nearest_vertex()) < config.convergence_eps;
            inside_since = match (near, inside_since) {
                (true, None) => Some(i),
                (true, since) => since,
                (false, _) => None,
            };
            if let Some(start) = inside_since {
                if i + 1 - start >= config.convergence_window {
                    break;
                }
            }
        }
    }
    Ok(Trajectory {
        samples,
        params: *p,
        config: *config,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceResult {
    pub converged: bool,
    pub limit: Option<EquilibriumPoint>,
    pub t_converge: Option<f64>,
}

impl ConvergenceResult {
    fn not_converged() -> Self {
        ConvergenceResult {
            converged: false,
            limit: None,
            t_converge: None,
        }
    }
}

/// Decides whether the trajectory has settled on a cube vertex.
///
/// The trailing `convergence_window` samples (or all of them, for shorter
/// trajectories) must lie within `convergence_eps` of the vertex nearest the
/// final state. `t_converge` is the first time after which the trajectory
/// never leaves that ball.
pub fn detect_convergence(traj: &Trajectory) -> Result<ConvergenceResult> {
    let last = traj.samples.last().ok_or(Error::EmptyTrajectory)?;
    let vertex = last.state.nearest_vertex();
    let eps = traj.config.convergence_eps;
    let inside = |s: &Sample| s.state.distance(&vertex) < eps;

    let window = traj.config.convergence_window.min(traj.samples.len());
    if !traj.samples[traj.samples.len() - window..]
        .iter()
        .all(inside)
    {
        return Ok(ConvergenceResult::not_converged());
    }
    let entry = traj
        .samples
        .iter()
        .rposition(|s| !inside(s))
        .map_or(0, |i| i + 1);
    let label = EquilibriumLabel::from_vertex(&vertex).expect("nearest_vertex returns a vertex");
    Ok(ConvergenceResult {
        converged: true,
        limit: Some(EquilibriumPoint {
            label,
            coords: vertex,
            kind: EquilibriumKind::Pure,
        }),
        t_converge: Some(traj.samples[entry].t),
    })
}

/// First sample time from which `|coordinate − target| < threshold` holds for
/// the rest of the trajectory.
pub fn time_to_threshold(
    traj: &Trajectory,
    axis: Axis,
    target: f64,
    threshold: f64,
) -> Option<f64> {
    let within = |s: &Sample| (s.state.get(axis) - target).abs() < threshold;
    if !traj.samples.last().is_some_and(within) {
        return None;
    }
    let entry = traj
        .samples
        .iter()
        .rposition(|s| !within(s))
        .map_or(0, |i| i + 1);
    Some(traj.samples[entry].t)
}
