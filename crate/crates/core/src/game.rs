//! Payoff matrix, expected utilities and the replicator vector field.
//!
//! Three populations play simultaneously:
//!
//! | player               | first strategy (probability) | second strategy |
//! |----------------------|------------------------------|-----------------|
//! | government           | discharge (`x`)              | store           |
//! | other countries      | sanction (`y`)               | no sanction     |
//! | fisheries association| oppose (`z`)                 | accept          |
//!
//! Each share evolves as `p' = p(1 − p)(u_first − u_second)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// One of the three strategy coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Mixed-strategy point in the unit cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyState {
    coords: [f64; 3],
}

impl StrategyState {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_array([x, y, z])
    }

    pub fn from_array(coords: [f64; 3]) -> Result<Self> {
        for axis in Axis::ALL {
            let v = coords[axis.index()];
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidState {
                    axis: axis.letter(),
                    value: v,
                });
            }
        }
        Ok(StrategyState {
            coords: coords.map(|v| v + 0.0),
        })
    }

    /// Vertex of the cube; each flag picks coordinate 1 (`true`) or 0.
    pub fn vertex(x: bool, y: bool, z: bool) -> Self {
        let b = |f: bool| if f { 1.0 } else { 0.0 };
        StrategyState {
            coords: [b(x), b(y), b(z)],
        }
    }

    /// The symmetric starting point used by every scenario.
    pub fn center() -> Self {
        StrategyState { coords: [0.5; 3] }
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.coords[1]
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.coords[2]
    }

    #[inline]
    pub fn get(&self, axis: Axis) -> f64 {
        self.coords[axis.index()]
    }

    pub fn to_array(&self) -> [f64; 3] {
        self.coords
    }

    pub fn is_vertex(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0 || c == 1.0)
    }

    /// Max-norm distance to another state.
    pub fn distance(&self, other: &StrategyState) -> f64 {
        (0..3)
            .map(|i| (self.coords[i] - other.coords[i]).abs())
            .fold(0.0, f64::max)
    }

    /// The cube vertex closest to this state (ties round up).
    pub fn nearest_vertex(&self) -> StrategyState {
        let [x, y, z] = self.coords.map(|c| c >= 0.5);
        StrategyState::vertex(x, y, z)
    }
}

impl fmt::Display for StrategyState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x(), self.y(), self.z())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GovernmentMove {
    Discharge,
    NoDischarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountriesMove {
    Sanction,
    NoSanction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FisheriesMove {
    Oppose,
    Accept,
}

impl GovernmentMove {
    pub const ALL: [GovernmentMove; 2] = [GovernmentMove::Discharge, GovernmentMove::NoDischarge];
}

impl CountriesMove {
    pub const ALL: [CountriesMove; 2] = [CountriesMove::Sanction, CountriesMove::NoSanction];
}

impl FisheriesMove {
    pub const ALL: [FisheriesMove; 2] = [FisheriesMove::Oppose, FisheriesMove::Accept];
}

/// Probability that a player whose first-strategy share is `share` plays `first`.
fn weight(share: f64, first: bool) -> f64 {
    if first {
        share
    } else {
        1.0 - share
    }
}

/// Payoffs of the three players for one pure outcome.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PayoffCell {
    pub government: f64,
    pub countries: f64,
    pub fisheries: f64,
}

impl PayoffCell {
    pub const fn new(government: f64, countries: f64, fisheries: f64) -> Self {
        PayoffCell {
            government,
            countries,
            fisheries,
        }
    }
}

/// The full 2×2×2 payoff table.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    cells: [[[PayoffCell; 2]; 2]; 2],
}

impl PayoffMatrix {
    /// Fills every outcome from `f`; all payoffs must be finite.
    pub fn from_fn<F>(mut f: F) -> Result<Self>
    where
        F: FnMut(GovernmentMove, CountriesMove, FisheriesMove) -> PayoffCell,
    {
        let mut cells = [[[PayoffCell::default(); 2]; 2]; 2];
        for (gi, g) in GovernmentMove::ALL.into_iter().enumerate() {
            for (ci, c) in CountriesMove::ALL.into_iter().enumerate() {
                for (fi, m) in FisheriesMove::ALL.into_iter().enumerate() {
                    let cell = f(g, c, m);
                    if ![cell.government, cell.countries, cell.fisheries]
                        .iter()
                        .all(|v| v.is_finite())
                    {
                        return Err(Error::InvalidConfig(format!(
                            "payoff cell ({g:?}, {c:?}, {m:?}) is not finite"
                        )));
                    }
                    cells[gi][ci][fi] = cell;
                }
            }
        }
        Ok(PayoffMatrix { cells })
    }

    pub fn zero() -> Self {
        PayoffMatrix {
            cells: [[[PayoffCell::default(); 2]; 2]; 2],
        }
    }

    pub fn cell(&self, g: GovernmentMove, c: CountriesMove, f: FisheriesMove) -> PayoffCell {
        self.cells[g as usize][c as usize][f as usize]
    }

    /// All eight outcomes in row-major (government, countries, fisheries) order.
    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (GovernmentMove, CountriesMove, FisheriesMove, PayoffCell)> + '_ {
        GovernmentMove::ALL.into_iter().flat_map(move |g| {
            CountriesMove::ALL.into_iter().flat_map(move |c| {
                FisheriesMove::ALL
                    .into_iter()
                    .map(move |f| (g, c, f, self.cell(g, c, f)))
            })
        })
    }
}

/// Builds the payoff table with the model's sign conventions applied.
pub fn build_payoff_matrix(p: &ModelParams) -> PayoffMatrix {
    use CountriesMove::*;
    use FisheriesMove::*;
    use GovernmentMove::*;

    let sanctioned = -p.image_cost() - p.countries_compensation() - p.export_tax_loss();
    let discharge_base = -p.discharge_cost() - p.monitoring_cost();
    let sanctioning_countries =
        -p.own_seafood_cost() + p.substitute_benefit() + p.countries_compensation()
            - p.countries_monitoring_cost();

    PayoffMatrix::from_fn(|g, c, f| match (g, c, f) {
        (Discharge, Sanction, Oppose) => PayoffCell::new(
            sanctioned - p.fisheries_compensation() + discharge_base,
            sanctioning_countries,
            p.fisheries_compensation() - p.fisheries_revenue_loss(),
        ),
        (Discharge, Sanction, Accept) => PayoffCell::new(
            sanctioned + discharge_base,
            sanctioning_countries,
            -p.fisheries_revenue_loss() - p.fisheries_image_cost(),
        ),
        (Discharge, NoSanction, Oppose) => PayoffCell::new(
            -p.fisheries_compensation() + discharge_base,
            -p.countries_monitoring_cost(),
            p.fisheries_compensation(),
        ),
        (Discharge, NoSanction, Accept) => PayoffCell::new(
            discharge_base,
            -p.countries_monitoring_cost(),
            -p.fisheries_image_cost(),
        ),
        (NoDischarge, Sanction, Oppose) => {
            PayoffCell::new(p.foreign_aid() - p.storage_cost(), -p.foreign_aid(), 0.0)
        }
        (NoDischarge, Sanction, Accept) => PayoffCell::new(
            p.foreign_aid() - p.storage_cost(),
            -p.foreign_aid(),
            -p.fisheries_image_cost(),
        ),
        (NoDischarge, NoSanction, Oppose) => PayoffCell::new(-p.storage_cost(), 0.0, 0.0),
        (NoDischarge, NoSanction, Accept) => {
            PayoffCell::new(-p.storage_cost(), 0.0, -p.fisheries_image_cost())
        }
    })
    .expect("validated parameters always give finite payoffs")
}

/// Expected utilities of one player's two strategies and the population average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityBundle {
    /// Utility of the first strategy (discharge / sanction / oppose).
    pub first: f64,
    /// Utility of the second strategy.
    pub second: f64,
    pub average: f64,
}

impl UtilityBundle {
    fn from_share(share: f64, first: f64, second: f64) -> Self {
        UtilityBundle {
            first,
            second,
            average: share * first + (1.0 - share) * second,
        }
    }

    pub fn advantage(&self) -> f64 {
        self.first - self.second
    }
}

pub fn utilities_government(p: &ModelParams, s: &StrategyState) -> UtilityBundle {
    let (y, z) = (s.y(), s.z());
    let discharge = y * (-p.image_cost() - p.countries_compensation() - p.export_tax_loss())
        - z * p.fisheries_compensation()
        - p.discharge_cost()
        - p.monitoring_cost();
    let store = y * p.foreign_aid() - p.storage_cost();
    UtilityBundle::from_share(s.x(), discharge, store)
}

pub fn utilities_countries(p: &ModelParams, s: &StrategyState) -> UtilityBundle {
    let x = s.x();
    let sanction = x
        * (p.foreign_aid() - p.own_seafood_cost()
            + p.substitute_benefit()
            + p.countries_compensation()
            - p.countries_monitoring_cost())
        - p.foreign_aid();
    let no_sanction = -x * p.countries_monitoring_cost();
    UtilityBundle::from_share(s.y(), sanction, no_sanction)
}

pub fn utilities_fisheries(p: &ModelParams, s: &StrategyState) -> UtilityBundle {
    let (x, y) = (s.x(), s.y());
    let shared = -x * y * p.fisheries_revenue_loss();
    let oppose = shared + x * p.fisheries_compensation();
    let accept = shared - p.fisheries_image_cost();
    UtilityBundle::from_share(s.z(), oppose, accept)
}

/// Time derivative of the strategy shares.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue {
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
}

impl FieldValue {
    pub fn to_array(&self) -> [f64; 3] {
        [self.dx, self.dy, self.dz]
    }

    pub fn get(&self, axis: Axis) -> f64 {
        self.to_array()[axis.index()]
    }

    pub fn max_abs_diff(&self, other: &FieldValue) -> f64 {
        (0..3)
            .map(|i| (self.to_array()[i] - other.to_array()[i]).abs())
            .fold(0.0, f64::max)
    }
}

/// Advantage brackets `(u_first − u_second)` for the three players, evaluated
/// at an arbitrary point (not necessarily inside the cube).
#[inline]
pub(crate) fn advantages(p: &ModelParams, [x, y, z]: [f64; 3]) -> [f64; 3] {
    [
        -y * p.sanction_pressure()
            - z * p.fisheries_compensation()
            - p.discharge_cost()
            - p.monitoring_cost()
            + p.storage_cost(),
        x * p.sanction_slope() - p.foreign_aid(),
        x * p.fisheries_compensation() + p.fisheries_image_cost(),
    ]
}

/// Replicator field on raw coordinates; the integrator evaluates stages here.
#[inline]
pub(crate) fn field_raw(p: &ModelParams, s: [f64; 3]) -> [f64; 3] {
    let a = advantages(p, s);
    [
        s[0] * (1.0 - s[0]) * a[0],
        s[1] * (1.0 - s[1]) * a[1],
        s[2] * (1.0 - s[2]) * a[2],
    ]
}

/// The replicator system in closed form.
pub fn replicator_field(p: &ModelParams, s: &StrategyState) -> FieldValue {
    let [dx, dy, dz] = field_raw(p, s.to_array());
    FieldValue { dx, dy, dz }
}

/// Replicator field computed directly from a payoff table by weighting each
/// cell with the opponents' mixed strategies. Independent of the closed forms.
pub fn generic_expected_field(m: &PayoffMatrix, s: &StrategyState) -> FieldValue {
    let (x, y, z) = (s.x(), s.y(), s.z());

    let gov = |g: GovernmentMove| -> f64 {
        let mut u = 0.0;
        for c in CountriesMove::ALL {
            for f in FisheriesMove::ALL {
                let w =
                    weight(y, c == CountriesMove::Sanction) * weight(z, f == FisheriesMove::Oppose);
                u += w * m.cell(g, c, f).government;
            }
        }
        u
    };
    let countries = |c: CountriesMove| -> f64 {
        let mut u = 0.0;
        for g in GovernmentMove::ALL {
            for f in FisheriesMove::ALL {
                let w = weight(x, g == GovernmentMove::Discharge)
                    * weight(z, f == FisheriesMove::Oppose);
                u += w * m.cell(g, c, f).countries;
            }
        }
        u
    };
    let fisheries = |f: FisheriesMove| -> f64 {
        let mut u = 0.0;
        for g in GovernmentMove::ALL {
            for c in CountriesMove::ALL {
                let w = weight(x, g == GovernmentMove::Discharge)
                    * weight(y, c == CountriesMove::Sanction);
                u += w * m.cell(g, c, f).fisheries;
            }
        }
        u
    };

    let rate = |share: f64, first: f64, second: f64| share * (1.0 - share) * (first - second);
    FieldValue {
        dx: rate(
            x,
            gov(GovernmentMove::Discharge),
            gov(GovernmentMove::NoDischarge),
        ),
        dy: rate(
            y,
            countries(CountriesMove::Sanction),
            countries(CountriesMove::NoSanction),
        ),
        dz: rate(
            z,
            fisheries(FisheriesMove::Oppose),
            fisheries(FisheriesMove::Accept),
        ),
    }
}
