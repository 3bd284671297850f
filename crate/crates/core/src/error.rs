use thiserror::Error;

use crate::params::ParamName;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {name} must be finite and non-negative, got {value}")]
    InvalidParameter { name: ParamName, value: f64 },

    #[error("strategy coordinate {axis} must lie in [0, 1], got {value}")]
    InvalidState { axis: char, value: f64 },

    #[error("unknown parameter name `{0}`")]
    UnknownParameter(String),

    #[error("unknown scenario preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown sweep `{0}`")]
    UnknownSweep(String),

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("finite-difference step must lie in (0, 1e-3], got {0}")]
    InvalidStep(f64),

    #[error("vertex eigenvalue closed forms only apply to pure equilibria, got {0}")]
    NotAVertex(&'static str),

    #[error(
        "integration became unstable at t = {t}: clamping correction {correction:e} exceeds {budget:e}"
    )]
    Instability {
        t: f64,
        correction: f64,
        budget: f64,
    },

    #[error("sweep has no values")]
    EmptySweep,

    #[error("sweep variant #{index} ({value}) did not converge to a vertex")]
    VariantNotConverged { index: usize, value: String },

    #[error("empty trajectory")]
    EmptyTrajectory,
}
