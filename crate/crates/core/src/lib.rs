//! Three-party evolutionary game between a government deciding whether to
//! discharge treated wastewater, other countries deciding whether to
//! sanction, and a domestic fisheries association deciding whether to oppose.
//!
//! The crate covers the payoff model ([`game`]), equilibrium and stability
//! analysis ([`stability`]), trajectory integration ([`dynamics`]), the
//! reference parameter scenarios ([`presets`]) and sensitivity sweeps
//! ([`experiments`]). Everything is a pure function of its inputs.

pub mod dynamics;
pub mod eigen;
pub mod error;
pub mod experiments;
pub mod game;
pub mod params;
pub mod presets;
pub mod stability;

pub use num_complex::Complex64;

pub use dynamics::{
    detect_convergence, integrate, rk4_step, time_to_threshold, ConvergenceResult,
    IntegratorConfig, Sample, Trajectory,
};
pub use error::{Error, Result};
pub use experiments::{
    check_claim, reference_claims, run_sweep, speed_ordering, NamedSweep, ReproductionNote,
    SpeedClaim, SpeedOrdering, SweepAxis, SweepResult, SweepSpec, SweepValue, Trend, VariantRun,
};
pub use game::{
    build_payoff_matrix, generic_expected_field, replicator_field, utilities_countries,
    utilities_fisheries, utilities_government, Axis, CountriesMove, FieldValue, FisheriesMove,
    GovernmentMove, PayoffCell, PayoffMatrix, StrategyState, UtilityBundle,
};
pub use params::{ModelParams, ParamName};
pub use presets::{preset, preset_by_name, PresetName, ScenarioPreset};
pub use stability::{
    analytic_jacobian, check_conditions, classify, default_sign_tolerance,
    finite_difference_jacobian, general_eigenvalues, interior_equilibrium, pure_equilibria,
    stability_report, vertex_eigenvalues, Classification, ConditionCheck, EquilibriumKind,
    EquilibriumLabel, EquilibriumPoint, EquilibriumReport, InteriorOutcome, JacobianMatrix, Sign,
    StabilityReport,
};
