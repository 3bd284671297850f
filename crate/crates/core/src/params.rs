//! The thirteen cost/benefit magnitudes that parameterise the game.
//!
//! Every value is a non-negative magnitude; the payoff formulas apply the
//! signs. Validation happens once, when a value enters a [`ModelParams`], so
//! everything downstream can treat parameters as trusted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

macro_rules! param_table {
    ($( $variant:ident => $field:ident, $symbol:literal, $doc:literal; )*) => {
        /// Names of the model parameters, in canonical order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ParamName {
            $( #[doc = $doc] $variant, )*
        }

        impl ParamName {
            pub const ALL: [ParamName; 13] = [$( ParamName::$variant, )*];

            /// Canonical short symbol used in config files and on the command line.
            pub fn symbol(self) -> &'static str {
                match self { $( ParamName::$variant => $symbol, )* }
            }

            pub fn description(self) -> &'static str {
                match self { $( ParamName::$variant => $doc, )* }
            }

            fn field_name(self) -> &'static str {
                match self { $( ParamName::$variant => stringify!($field), )* }
            }
        }

        /// Validated model parameters.
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct ModelParams {
            $( $field: f64, )*
        }

        impl ModelParams {
            $(
                #[doc = $doc]
                #[inline]
                pub fn $field(&self) -> f64 {
                    self.$field
                }
            )*

            pub fn get(&self, name: ParamName) -> f64 {
                match name { $( ParamName::$variant => self.$field, )* }
            }

            fn slot(&mut self, name: ParamName) -> &mut f64 {
                match name { $( ParamName::$variant => &mut self.$field, )* }
            }
        }
    };
}

param_table! {
    ImageCost => image_cost, "I_J", "Loss of the government's international image when it discharges";
    CountriesCompensation => countries_compensation, "C_LC", "Litigation compensation paid to other countries";
    ExportTaxLoss => export_tax_loss, "T_RJ", "Export tax revenue lost by the government due to discharge";
    ForeignAid => foreign_aid, "C_HJ", "Aid the government receives from other countries when it does not discharge";
    FisheriesCompensation => fisheries_compensation, "C_LF", "Litigation compensation paid to the fisheries association";
    DischargeCost => discharge_cost, "C_DJ", "Cost of discharging into the sea";
    MonitoringCost => monitoring_cost, "C_MJ", "Ocean monitoring cost for the government when discharging";
    StorageCost => storage_cost, "C_SJ", "Cost of storing the wastewater instead of discharging";
    FisheriesImageCost => fisheries_image_cost, "C_IF", "Image cost the fisheries association bears when it accepts discharge";
    SubstituteBenefit => substitute_benefit, "B_SP", "Benefit other countries' seafood industries gain from substitute imports";
    OwnSeafoodCost => own_seafood_cost, "C_SC", "Additional cost for other countries to develop their own seafood";
    CountriesMonitoringCost => countries_monitoring_cost, "C_MC", "Ocean monitoring cost for other countries when discharge happens";
    FisheriesRevenueLoss => fisheries_revenue_loss, "E_RF", "Revenue the fisheries association loses due to discharge";
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    /// Accepts the symbol (`C_SJ`, case-insensitive, underscore optional) or the
    /// snake-case accessor name (`storage_cost`).
    fn from_str(s: &str) -> Result<Self> {
        let squash = |t: &str| t.replace('_', "").to_ascii_lowercase();
        let wanted = squash(s.trim());
        ParamName::ALL
            .into_iter()
            .find(|p| squash(p.symbol()) == wanted || p.field_name() == s.trim())
            .ok_or_else(|| Error::UnknownParameter(s.to_string()))
    }
}

fn check(name: ParamName, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        // normalise -0.0 so that formatting never shows a signed zero
        Ok(value + 0.0)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

impl ModelParams {
    /// Builds parameters from values listed in [`ParamName::ALL`] order.
    pub fn new(values: [f64; 13]) -> Result<Self> {
        let mut params = Self::zero();
        for (name, value) in ParamName::ALL.into_iter().zip(values) {
            params.set(name, value)?;
        }
        Ok(params)
    }

    /// All-zero parameters: every payoff vanishes and the field is identically zero.
    pub fn zero() -> Self {
        ModelParams {
            image_cost: 0.0,
            countries_compensation: 0.0,
            export_tax_loss: 0.0,
            foreign_aid: 0.0,
            fisheries_compensation: 0.0,
            discharge_cost: 0.0,
            monitoring_cost: 0.0,
            storage_cost: 0.0,
            fisheries_image_cost: 0.0,
            substitute_benefit: 0.0,
            own_seafood_cost: 0.0,
            countries_monitoring_cost: 0.0,
            fisheries_revenue_loss: 0.0,
        }
    }

    pub fn set(&mut self, name: ParamName, value: f64) -> Result<()> {
        *self.slot(name) = check(name, value)?;
        Ok(())
    }

    pub fn with(mut self, name: ParamName, value: f64) -> Result<Self> {
        self.set(name, value)?;
        Ok(self)
    }

    pub fn values(&self) -> [f64; 13] {
        ParamName::ALL.map(|p| self.get(p))
    }

    /// Multiplies every parameter by `factor` (which must be positive).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let mut out = *self;
        for name in ParamName::ALL {
            out.set(name, self.get(name) * factor)?;
        }
        Ok(out)
    }

    /// Largest parameter magnitude, or 1 if every parameter is below 1.
    pub fn scale(&self) -> f64 {
        self.values().into_iter().fold(1.0, f64::max)
    }

    /// `I_J + C_LC + T_RJ + C_HJ`: how much the government's discharge
    /// incentive drops as sanctions become more likely.
    pub(crate) fn sanction_pressure(&self) -> f64 {
        self.image_cost + self.countries_compensation + self.export_tax_loss + self.foreign_aid
    }

    /// `C_HJ − C_SC + B_SP + C_LC`: slope of the countries' sanction advantage in `x`.
    pub(crate) fn sanction_slope(&self) -> f64 {
        self.foreign_aid - self.own_seafood_cost
            + self.substitute_benefit
            + self.countries_compensation
    }
}
