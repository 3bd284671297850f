//! Equilibria of the replicator system and their local stability.
//!
//! The eight cube vertices are always fixed points. At a vertex the Jacobian
//! is diagonal, so its eigenvalues are the diagonal entries and are available
//! in closed form; those closed forms drive the classification. The generic
//! cubic solver in [`crate::eigen`] handles every other point.

use std::fmt;

use num_complex::Complex64;

use crate::eigen::{self, Matrix3};
use crate::error::{Error, Result};
use crate::game::{field_raw, StrategyState};
use crate::params::ModelParams;

/// Partial derivatives of the replicator field; row `r` is the derivative of
/// component `r` (`ẋ`, `ẏ`, `ż`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianMatrix(pub Matrix3);

impl JacobianMatrix {
    pub fn entries(&self) -> &Matrix3 {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    pub fn trace(&self) -> f64 {
        eigen::trace(&self.0)
    }

    pub fn determinant(&self) -> f64 {
        eigen::determinant(&self.0)
    }

    pub fn max_norm(&self) -> f64 {
        eigen::max_norm(&self.0)
    }

    pub fn max_abs_diff(&self, other: &JacobianMatrix) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).abs());
            }
        }
        worst
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|r| (0..3).all(|c| r == c || self.0[r][c] == 0.0))
    }
}

/// Closed-form Jacobian of the replicator system.
pub fn analytic_jacobian(p: &ModelParams, s: &StrategyState) -> JacobianMatrix {
    let (x, y, z) = (s.x(), s.y(), s.z());
    let gov_bracket = -y * p.sanction_pressure()
        - z * p.fisheries_compensation()
        - p.discharge_cost()
        - p.monitoring_cost()
        + p.storage_cost();
    let countries_bracket = x * p.sanction_slope() - p.foreign_aid();
    let fisheries_bracket = x * p.fisheries_compensation() + p.fisheries_image_cost();
    let vx = x * (1.0 - x);
    let vy = y * (1.0 - y);
    let vz = z * (1.0 - z);

    JacobianMatrix([
        [
            (1.0 - 2.0 * x) * gov_bracket,
            -vx * p.sanction_pressure(),
            -vx * p.fisheries_compensation(),
        ],
        [
            vy * p.sanction_slope(),
            (1.0 - 2.0 * y) * countries_bracket,
            0.0,
        ],
        [
            vz * p.fisheries_compensation(),
            0.0,
            (1.0 - 2.0 * z) * fisheries_bracket,
        ],
    ])
}

/// Jacobian from finite differences of the field.
///
/// Uses central differences where the stencil fits inside the cube and
/// second-order one-sided differences against a face, so the error is
/// O(h²) everywhere.
pub fn finite_difference_jacobian(
    p: &ModelParams,
    s: &StrategyState,
    h: f64,
) -> Result<JacobianMatrix> {
    if !(h > 0.0 && h <= 1e-3) {
        return Err(Error::InvalidStep(h));
    }
    let base = s.to_array();
    let at = |col: usize, offset: f64| {
        let mut q = base;
        q[col] += offset;
        field_raw(p, q)
    };
    let mut j = [[0.0; 3]; 3];
    for col in 0..3 {
        let c = base[col];
        let column: [f64; 3] = if c - h >= 0.0 && c + h <= 1.0 {
            let (fp, fm) = (at(col, h), at(col, -h));
            [0, 1, 2].map(|r| (fp[r] - fm[r]) / (2.0 * h))
        } else if c + 2.0 * h <= 1.0 {
            let (f0, f1, f2) = (at(col, 0.0), at(col, h), at(col, 2.0 * h));
            [0, 1, 2].map(|r| (-3.0 * f0[r] + 4.0 * f1[r] - f2[r]) / (2.0 * h))
        } else {
            let (f0, f1, f2) = (at(col, 0.0), at(col, -h), at(col, -2.0 * h));
            [0, 1, 2].map(|r| (3.0 * f0[r] - 4.0 * f1[r] + f2[r]) / (2.0 * h))
        };
        for r in 0..3 {
            j[r][col] = column[r];
        }
    }
    Ok(JacobianMatrix(j))
}

/// Labels of the nine candidate equilibria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquilibriumLabel {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    /// The interior (mixed) candidate.
    G9,
}

impl EquilibriumLabel {
    pub const VERTICES: [EquilibriumLabel; 8] = [
        EquilibriumLabel::G1,
        EquilibriumLabel::G2,
        EquilibriumLabel::G3,
        EquilibriumLabel::G4,
        EquilibriumLabel::G5,
        EquilibriumLabel::G6,
        EquilibriumLabel::G7,
        EquilibriumLabel::G8,
    ];

    /// 1-based index, `gamma1` .. `gamma9`.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> String {
        format!("gamma{}", self.number())
    }

    /// Coordinates of a vertex label; `None` for the interior candidate.
    pub fn vertex(self) -> Option<StrategyState> {
        use EquilibriumLabel::*;
        let (x, y, z) = match self {
            G1 => (false, false, false),
            G2 => (true, false, false),
            G3 => (false, true, false),
            G4 => (false, false, true),
            G5 => (true, true, false),
            G6 => (true, false, true),
            G7 => (false, true, true),
            G8 => (true, true, true),
            G9 => return None,
        };
        Some(StrategyState::vertex(x, y, z))
    }

    pub fn from_vertex(s: &StrategyState) -> Option<EquilibriumLabel> {
        Self::VERTICES
            .into_iter()
            .find(|l| l.vertex().as_ref() == Some(s))
    }
}

impl fmt::Display for EquilibriumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gamma{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    Pure,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPoint {
    pub label: EquilibriumLabel,
    pub coords: StrategyState,
    pub kind: EquilibriumKind,
}

/// The eight vertices, `gamma1` through `gamma8`, in label order.
pub fn pure_equilibria() -> [EquilibriumPoint; 8] {
    EquilibriumLabel::VERTICES.map(|label| EquilibriumPoint {
        label,
        coords: label.vertex().expect("vertex label"),
        kind: EquilibriumKind::Pure,
    })
}

/// Why the interior candidate is not reported as an equilibrium point.
#[derive(Debug, Clone, PartialEq)]
pub enum InteriorOutcome {
    Feasible(EquilibriumPoint),
    /// The fisheries condition pins `x* = −C_IF / C_LF`, which lies outside (0, 1).
    Infeasible {
        x_star: f64,
    },
    /// The two conditions on `x*` disagree, so no interior rest point exists.
    Inconsistent {
        x_from_fisheries: f64,
        x_from_countries: f64,
    },
    Degenerate(&'static str),
}

impl InteriorOutcome {
    pub fn point(&self) -> Option<&EquilibriumPoint> {
        match self {
            InteriorOutcome::Feasible(p) => Some(p),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            InteriorOutcome::Feasible(_) => "feasible",
            InteriorOutcome::Infeasible { .. } | InteriorOutcome::Inconsistent { .. } => {
                "infeasible"
            }
            InteriorOutcome::Degenerate(_) => "degenerate",
        }
    }
}

/// Solves the three bracket conditions for a rest point strictly inside the cube.
///
/// The fisheries bracket `x·C_LF + C_IF = 0` fixes `x*` first. With
/// non-negative parameters `x* ≤ 0`, so the candidate is infeasible for every
/// valid parameter set; the remaining branches cover the algebra for
/// completeness.
pub fn interior_equilibrium(p: &ModelParams) -> InteriorOutcome {
    let clf = p.fisheries_compensation();
    if clf == 0.0 {
        return InteriorOutcome::Degenerate("C_LF is zero");
    }
    let x_star = -p.fisheries_image_cost() / clf + 0.0;
    if !(x_star > 0.0 && x_star < 1.0) {
        return InteriorOutcome::Infeasible { x_star };
    }
    let slope = p.sanction_slope();
    if slope == 0.0 {
        return InteriorOutcome::Degenerate("C_HJ - C_SC + B_SP + C_LC is zero");
    }
    let pressure = p.sanction_pressure();
    if pressure == 0.0 {
        return InteriorOutcome::Degenerate("I_J + C_LC + T_RJ + C_HJ is zero");
    }
    let x_countries = p.foreign_aid() / slope;
    if (x_countries - x_star).abs() > 1e-12 * x_star.abs().max(1.0) {
        return InteriorOutcome::Inconsistent {
            x_from_fisheries: x_star,
            x_from_countries: x_countries,
        };
    }
    // The government bracket then leaves a line of rest points in (y, z).
    InteriorOutcome::Degenerate("interior rest points form a continuum")
}

/// Appendix closed forms: the Jacobian diagonal at a vertex, in axis order.
pub fn vertex_eigenvalues(p: &ModelParams, point: &EquilibriumPoint) -> Result<[f64; 3]> {
    if point.kind != EquilibriumKind::Pure || !point.coords.is_vertex() {
        return Err(Error::NotAVertex("interior point"));
    }
    let (x, y, z) = (point.coords.x(), point.coords.y(), point.coords.z());
    // sign flips from (1 − 2v) at v = 1
    let flip = |v: f64| if v == 1.0 { -1.0 } else { 1.0 };
    let gov = p.storage_cost()
        - p.monitoring_cost()
        - p.discharge_cost()
        - y * p.sanction_pressure()
        - z * p.fisheries_compensation();
    let countries = x * p.sanction_slope() - p.foreign_aid();
    let fisheries = x * p.fisheries_compensation() + p.fisheries_image_cost();
    Ok([
        flip(x) * gov + 0.0,
        flip(y) * countries + 0.0,
        flip(z) * fisheries + 0.0,
    ])
}

pub use crate::eigen::general_eigenvalues;

/// Stability verdict for one equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// All real parts strictly negative: asymptotically stable.
    Ess,
    /// All real parts strictly positive.
    Unstable,
    /// Strict signs of both kinds.
    Saddle,
    /// Some real part inside the tolerance band; linearisation is inconclusive.
    Indeterminate,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Ess => "ESS",
            Classification::Unstable => "Unstable",
            Classification::Saddle => "NonESS-Saddle",
            Classification::Indeterminate => "Indeterminate",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: f64, tolerance: f64) -> Sign {
        if value < -tolerance {
            Sign::Negative
        } else if value > tolerance {
            Sign::Positive
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

pub fn classify(eigs: &[Complex64; 3], tolerance: f64) -> Classification {
    let signs = eigs.map(|e| Sign::of(e.re, tolerance));
    if signs.contains(&Sign::Zero) {
        Classification::Indeterminate
    } else if signs.iter().all(|&s| s == Sign::Negative) {
        Classification::Ess
    } else if signs.iter().all(|&s| s == Sign::Positive) {
        Classification::Unstable
    } else {
        Classification::Saddle
    }
}

/// Default dead band for eigenvalue signs: `1e-9 · max(1, parameter scale)`.
pub fn default_sign_tolerance(p: &ModelParams) -> f64 {
    1e-9 * p.scale()
}

/// Which of the three stability conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionCheck {
    /// `C_SJ < C_LF + C_MJ + C_DJ` (the (0,0,1) vertex is stable)
    pub condition1: bool,
    /// `C_SJ > C_LF + C_MJ + C_DJ` and `B_SP + C_LC < C_SC` (the (1,0,1) vertex)
    pub condition2: bool,
    /// `C_SJ > C_DJ + C_HJ + C_LC + C_LF + C_MJ + I_J + T_RJ` and `C_SC < C_LC + B_SP` (the (1,1,1) vertex)
    pub condition3: bool,
}

pub fn check_conditions(p: &ModelParams) -> ConditionCheck {
    let discharge_total = p.fisheries_compensation() + p.monitoring_cost() + p.discharge_cost();
    let countries_gain = p.substitute_benefit() + p.countries_compensation();
    ConditionCheck {
        condition1: p.storage_cost() < discharge_total,
        condition2: p.storage_cost() > discharge_total && countries_gain < p.own_seafood_cost(),
        condition3: p.storage_cost()
            > discharge_total
                + p.foreign_aid()
                + p.countries_compensation()
                + p.image_cost()
                + p.export_tax_loss()
            && p.own_seafood_cost() < countries_gain,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub point: EquilibriumPoint,
    /// Axis order (x, y, z) for vertices; ascending real part otherwise.
    pub eigenvalues: [Complex64; 3],
    pub signs: [Sign; 3],
    pub classification: Classification,
}

impl EquilibriumReport {
    fn new(point: EquilibriumPoint, eigenvalues: [Complex64; 3], tolerance: f64) -> Self {
        EquilibriumReport {
            point,
            eigenvalues,
            signs: eigenvalues.map(|e| Sign::of(e.re, tolerance)),
            classification: classify(&eigenvalues, tolerance),
        }
    }

    pub fn sign_pattern(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub sign_tolerance: f64,
    pub vertices: Vec<EquilibriumReport>,
    pub interior: InteriorOutcome,
    /// Present only when the interior candidate is feasible.
    pub interior_report: Option<EquilibriumReport>,
    pub conditions: ConditionCheck,
}

impl StabilityReport {
    pub fn ess(&self) -> impl Iterator<Item = &EquilibriumReport> {
        self.vertices
            .iter()
            .chain(self.interior_report.iter())
            .filter(|r| r.classification == Classification::Ess)
    }

    pub fn vertex(&self, label: EquilibriumLabel) -> Option<&EquilibriumReport> {
        self.vertices.iter().find(|r| r.point.label == label)
    }
}

/// Classifies all eight vertices and the interior candidate.
pub fn stability_report(p: &ModelParams, sign_tolerance: f64) -> StabilityReport {
    let vertices = pure_equilibria()
        .into_iter()
        .map(|point| {
            let eigs = vertex_eigenvalues(p, &point)
                .expect("pure point")
                .map(|v| Complex64::new(v, 0.0));
            EquilibriumReport::new(point, eigs, sign_tolerance)
        })
        .collect();
    let interior = interior_equilibrium(p);
    let interior_report = interior.point().map(|point| {
        let eigs = general_eigenvalues(analytic_jacobian(p, &point.coords).entries());
        EquilibriumReport::new(*point, eigs, sign_tolerance)
    });
    StabilityReport {
        sign_tolerance,
        vertices,
        interior,
        interior_report,
        conditions: check_conditions(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{preset, PresetName};
    use proptest::prelude::*;

    fn params(name: PresetName) -> ModelParams {
        preset(name).params
    }

    fn point(label: EquilibriumLabel) -> EquilibriumPoint {
        pure_equilibria()[label as usize]
    }

    fn real(v: [f64; 3]) -> [Complex64; 3] {
        v.map(|r| Complex64::new(r, 0.0))
    }

    #[test]
    fn jacobian_at_g4_condition1() {
        let j = analytic_jacobian(
            &params(PresetName::Condition1),
            &StrategyState::vertex(false, false, true),
        );
        assert_eq!(
            j.0,
            [[-14.0, 0.0, 0.0], [0.0, -10.0, 0.0], [0.0, 0.0, -1.0]]
        );
    }

    #[test]
    fn jacobian_coupling_entries_at_half_x() {
        let p = params(PresetName::Condition3);
        let s = StrategyState::new(0.5, 0.3, 0.8).unwrap();
        let j = analytic_jacobian(&p, &s);
        assert_eq!(j.get(0, 1), 0.25 * -(20.0 + 10.0 + 5.0 + 10.0));
        assert_eq!(j.get(0, 2), -0.25 * 5.0);
        assert_eq!(j.get(1, 2), 0.0);
        assert_eq!(j.get(2, 1), 0.0);
    }

    #[test]
    fn zero_params_zero_jacobian() {
        let s = StrategyState::new(0.3, 0.6, 0.1).unwrap();
        assert_eq!(analytic_jacobian(&ModelParams::zero(), &s).0, [[0.0; 3]; 3]);
        let fd = finite_difference_jacobian(&ModelParams::zero(), &s, 1e-5).unwrap();
        assert!(fd.max_norm() <= 1e-12);
    }

    #[test]
    fn finite_differences_match_at_named_points() {
        let cases = [
            (PresetName::Condition1, StrategyState::center()),
            (
                PresetName::Condition3,
                StrategyState::new(0.3, 0.7, 0.2).unwrap(),
            ),
        ];
        for (name, s) in cases {
            let p = params(name);
            let fd = finite_difference_jacobian(&p, &s, 1e-5).unwrap();
            let an = analytic_jacobian(&p, &s);
            assert!(
                fd.max_abs_diff(&an) <= 1e-6,
                "{name}: {}",
                fd.max_abs_diff(&an)
            );
        }
    }

    #[test]
    fn finite_differences_work_on_faces() {
        let p = params(PresetName::Condition2);
        for s in [
            StrategyState::vertex(true, false, true),
            StrategyState::new(0.0, 1.0, 0.4).unwrap(),
        ] {
            let fd = finite_difference_jacobian(&p, &s, 1e-5).unwrap();
            assert!(fd.max_abs_diff(&analytic_jacobian(&p, &s)) <= 1e-6);
        }
    }

    #[test]
    fn finite_difference_rejects_bad_step() {
        let p = params(PresetName::Condition1);
        let s = StrategyState::center();
        assert!(matches!(
            finite_difference_jacobian(&p, &s, 0.0),
            Err(Error::InvalidStep(_))
        ));
        assert!(finite_difference_jacobian(&p, &s, -1e-5).is_err());
        assert!(finite_difference_jacobian(&p, &s, 0.1).is_err());
        assert!(finite_difference_jacobian(&p, &s, f64::NAN).is_err());
    }

    #[test]
    fn pure_equilibria_coordinates() {
        let pts = pure_equilibria();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[3].coords, StrategyState::vertex(false, false, true));
        assert_eq!(pts[7].coords, StrategyState::vertex(true, true, true));
        assert_eq!(pts[6].coords, StrategyState::vertex(false, true, true));
        assert!(pts
            .iter()
            .all(|p| p.coords.is_vertex() && p.kind == EquilibriumKind::Pure));
        for p in pts {
            assert_eq!(EquilibriumLabel::from_vertex(&p.coords), Some(p.label));
        }
    }

    #[test]
    fn interior_is_infeasible_for_presets() {
        let p = params(PresetName::Condition1);
        match interior_equilibrium(&p) {
            InteriorOutcome::Infeasible { x_star } => assert_eq!(x_star, -1.0 / 35.0),
            other => panic!("{other:?}"),
        }
        let p0 = p
            .with(crate::params::ParamName::FisheriesImageCost, 0.0)
            .unwrap();
        assert_eq!(
            interior_equilibrium(&p0),
            InteriorOutcome::Infeasible { x_star: 0.0 }
        );
        let deg = p
            .with(crate::params::ParamName::FisheriesCompensation, 0.0)
            .unwrap();
        assert!(matches!(
            interior_equilibrium(&deg),
            InteriorOutcome::Degenerate(_)
        ));
    }

    #[test]
    fn vertex_eigenvalues_closed_forms() {
        assert_eq!(
            vertex_eigenvalues(
                &params(PresetName::Condition1),
                &point(EquilibriumLabel::G4)
            )
            .unwrap(),
            [-14.0, -10.0, -1.0]
        );
        assert_eq!(
            vertex_eigenvalues(
                &params(PresetName::Condition2),
                &point(EquilibriumLabel::G6)
            )
            .unwrap(),
            [-1.0, -21.0, -21.0]
        );
        assert_eq!(
            vertex_eigenvalues(
                &params(PresetName::Condition3),
                &point(EquilibriumLabel::G8)
            )
            .unwrap(),
            [-21.0, -1.0, -6.0]
        );
        let interior = EquilibriumPoint {
            label: EquilibriumLabel::G9,
            coords: StrategyState::center(),
            kind: EquilibriumKind::Interior,
        };
        assert!(matches!(
            vertex_eigenvalues(&params(PresetName::Condition1), &interior),
            Err(Error::NotAVertex(_))
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&real([-14.0, -10.0, -1.0]), 1e-9),
            Classification::Ess
        );
        assert_eq!(
            classify(&real([21.0, -10.0, 1.0]), 1e-9),
            Classification::Saddle
        );
        assert_eq!(
            classify(&real([0.0, -1.0, -1.0]), 1e-9),
            Classification::Indeterminate
        );
        assert_eq!(
            classify(&real([3.0, 1.0, 2.0]), 1e-9),
            Classification::Unstable
        );
        let pair = [
            Complex64::new(-1.0, 2.0),
            Complex64::new(-1.0, -2.0),
            Complex64::new(-0.5, 0.0),
        ];
        assert_eq!(classify(&pair, 1e-9), Classification::Ess);
    }

    #[test]
    fn unique_ess_per_condition() {
        for (name, label) in [
            (PresetName::Condition1, EquilibriumLabel::G4),
            (PresetName::Condition2, EquilibriumLabel::G6),
            (PresetName::Condition3, EquilibriumLabel::G8),
        ] {
            let p = params(name);
            let report = stability_report(&p, default_sign_tolerance(&p));
            let ess: Vec<_> = report.ess().map(|r| r.point.label).collect();
            assert_eq!(ess, vec![label], "{name}");
            assert_eq!(report.vertices.len(), 8);
            assert_eq!(report.interior.status(), "infeasible");
        }
    }

    #[test]
    fn condition_predicates() {
        let c = check_conditions(&params(PresetName::Condition1));
        assert_eq!(
            (c.condition1, c.condition2, c.condition3),
            (true, false, false)
        );
        let c = check_conditions(&params(PresetName::Condition2));
        assert_eq!(
            (c.condition1, c.condition2, c.condition3),
            (false, true, false)
        );
        let c = check_conditions(&params(PresetName::Condition3));
        assert_eq!(
            (c.condition1, c.condition2, c.condition3),
            (false, false, true)
        );
    }

    #[test]
    fn zero_params_all_indeterminate() {
        let p = ModelParams::zero();
        let report = stability_report(&p, default_sign_tolerance(&p));
        assert!(report
            .vertices
            .iter()
            .all(|r| r.classification == Classification::Indeterminate));
    }

    fn arb_params() -> impl Strategy<Value = ModelParams> {
        proptest::array::uniform13(0.0..60.0f64).prop_map(|v| ModelParams::new(v).unwrap())
    }

    fn arb_state() -> impl Strategy<Value = StrategyState> {
        (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64)
            .prop_map(|(x, y, z)| StrategyState::new(x, y, z).unwrap())
    }

    proptest! {
        #[test]
        fn analytic_matches_finite_differences(p in arb_params(), s in arb_state()) {
            let an = analytic_jacobian(&p, &s);
            let fd = finite_difference_jacobian(&p, &s, 1e-5).unwrap();
            prop_assert!(fd.max_abs_diff(&an) <= 1e-6 * an.max_norm().max(1.0));
        }

        #[test]
        fn vertex_jacobians_are_diagonal(p in arb_params()) {
            for pt in pure_equilibria() {
                let j = analytic_jacobian(&p, &pt.coords);
                prop_assert!(j.is_diagonal());
                let closed = vertex_eigenvalues(&p, &pt).unwrap();
                let diag = [j.get(0, 0), j.get(1, 1), j.get(2, 2)];
                for k in 0..3 {
                    prop_assert!((closed[k] - diag[k]).abs() <= 1e-12 * p.scale());
                }
                let mut sorted = closed;
                sorted.sort_by(f64::total_cmp);
                let generic = general_eigenvalues(j.entries());
                for k in 0..3 {
                    prop_assert!((generic[k].re - sorted[k]).abs() <= 1e-12 * p.scale());
                }
            }
        }

        #[test]
        fn coupling_entries_vanish(p in arb_params(), s in arb_state()) {
            let j = analytic_jacobian(&p, &s);
            prop_assert_eq!(j.get(1, 2), 0.0);
            prop_assert_eq!(j.get(2, 1), 0.0);
        }

        #[test]
        fn scaling_keeps_sign_patterns(p in arb_params(), c in 0.01..100.0f64) {
            let q = p.scaled(c).unwrap();
            let a = stability_report(&p, default_sign_tolerance(&p));
            let b = stability_report(&q, default_sign_tolerance(&q));
            for (ra, rb) in a.vertices.iter().zip(&b.vertices) {
                for k in 0..3 {
                    let expect = c * ra.eigenvalues[k].re;
                    prop_assert!((rb.eigenvalues[k].re - expect).abs() <= 1e-12 * c * p.scale());
                }
                // patterns agree except where an eigenvalue sits at the band edge
                let near_band = ra.eigenvalues.iter().any(|e| (e.re.abs() - a.sign_tolerance).abs() < 1e-6 * p.scale());
                if !near_band {
                    prop_assert_eq!(ra.sign_pattern(), rb.sign_pattern());
                    prop_assert_eq!(ra.classification, rb.classification);
                }
            }
        }

        #[test]
        fn interior_never_feasible(p in arb_params()) {
            prop_assert!(interior_equilibrium(&p).point().is_none());
        }
    }
}
