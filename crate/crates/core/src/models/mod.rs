//! Cavern models behind one stepping interface.

pub mod charge;
pub mod constant_temperature;
pub mod discharge;
pub mod export;
pub mod idle;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::thermo::{check_flow, CavernParams, CavernState, Mode};

pub use charge::{
    charge_closed_form, charge_stage1, charge_stage2, charge_stage3, charge_step_bilinear,
    charge_step_exact, charge_step_linear, virtual_states,
};
pub use constant_temperature::constant_temperature_step;
pub use discharge::{discharge_step_bilinear, discharge_step_exact};
pub use export::{
    export_step_coefficients, step_forms, BilinearForm, Monomial, Point, StepCoefficients, Term,
    Variable,
};
pub use idle::{idle_step_bilinear, idle_step_exact, relax_temperature};
pub use oracle::{
    adiabatic_step, default_substeps, exact_step_with_heat, oracle_step, DEFAULT_ORACLE_SUBSTEP,
};

/// Flow fraction `ṁΔt / m_s` above which the exact staged step warns.
pub const EXACT_FLOW_WARNING: f64 = 0.05;
/// Flow fraction above which the bi-linear truncation is outside its envelope.
pub const BILINEAR_FLOW_ENVELOPE: f64 = 0.1;
/// Relative distance `|m_s − m_av0| / m_av0` accepted by the Taylor anchor.
pub const ANCHOR_ENVELOPE: f64 = 0.5;

/// Serialized under the same names the command line accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "exact-adiabatic")]
    ExactAdiabatic,
    #[serde(rename = "exact")]
    ExactWithHeatTransfer,
    #[serde(rename = "bilinear")]
    BiLinear,
    #[serde(rename = "const-temp")]
    ConstantTemperature,
    #[serde(rename = "oracle")]
    ReferenceOracle,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::ExactAdiabatic,
        ModelKind::ExactWithHeatTransfer,
        ModelKind::BiLinear,
        ModelKind::ConstantTemperature,
        ModelKind::ReferenceOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::ExactAdiabatic => "exact-adiabatic",
            ModelKind::ExactWithHeatTransfer => "exact",
            ModelKind::BiLinear => "bilinear",
            ModelKind::ConstantTemperature => "const-temp",
            ModelKind::ReferenceOracle => "oracle",
        }
    }

    /// Advances `state` by one step of length `dt`.
    pub fn step(
        self,
        state: &CavernState,
        mode: Mode,
        mdot: f64,
        dt: f64,
        params: &CavernParams,
    ) -> Result<StepOutcome> {
        check_flow(mode, mdot)?;
        let mut warnings = Vec::new();
        let ratio = mdot * dt / state.mass;
        let next = match self {
            ModelKind::ExactAdiabatic => {
                flow_warning(ratio, EXACT_FLOW_WARNING, &mut warnings);
                adiabatic_step(state, mode, mdot, dt, params)?
            }
            ModelKind::ExactWithHeatTransfer => {
                flow_warning(ratio, EXACT_FLOW_WARNING, &mut warnings);
                exact_step_with_heat(state, mode, mdot, dt, params)?
            }
            ModelKind::ReferenceOracle => {
                oracle_step(state, mode, mdot, dt, params, default_substeps(dt))?
            }
            ModelKind::ConstantTemperature => {
                constant_temperature_step(state, mode, mdot, dt, params)?
            }
            ModelKind::BiLinear => {
                flow_warning(ratio, BILINEAR_FLOW_ENVELOPE, &mut warnings);
                let anchor = params.anchor_mass();
                let deviation = (state.mass - anchor).abs() / anchor;
                if deviation > ANCHOR_ENVELOPE {
                    warnings.push(EnvelopeWarning::FarFromAnchor {
                        deviation,
                        limit: ANCHOR_ENVELOPE,
                    });
                }
                match mode {
                    Mode::Charge => charge_step_bilinear(state, mdot, dt, params)?,
                    Mode::Discharge => discharge_step_bilinear(state, mdot, dt, params)?,
                    Mode::Idle => idle_step_bilinear(state, dt, params)?,
                }
            }
        };
        Ok(StepOutcome {
            state: next,
            warnings,
        })
    }
}

fn flow_warning(ratio: f64, limit: f64, out: &mut Vec<EnvelopeWarning>) {
    if ratio > limit {
        out.push(EnvelopeWarning::LargeFlowFraction { ratio, limit });
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownModel(pub String);

impl fmt::Display for UnknownModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown model `{}` (expected exact, exact-adiabatic, bilinear, const-temp or oracle)",
            self.0
        )
    }
}

impl std::error::Error for UnknownModel {}

impl FromStr for ModelKind {
    type Err = UnknownModel;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" | "exact-heat" | "exact-with-heat-transfer" => {
                Ok(ModelKind::ExactWithHeatTransfer)
            }
            "exact-adiabatic" | "adiabatic" => Ok(ModelKind::ExactAdiabatic),
            "bilinear" | "bi-linear" => Ok(ModelKind::BiLinear),
            "const-temp" | "constant-temperature" | "isothermal" => {
                Ok(ModelKind::ConstantTemperature)
            }
            "oracle" | "reference" | "reference-oracle" => Ok(ModelKind::ReferenceOracle),
            _ => Err(UnknownModel(s.to_string())),
        }
    }
}

/// Validity-envelope breach noted during a step. Never fatal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EnvelopeWarning {
    LargeFlowFraction { ratio: f64, limit: f64 },
    FarFromAnchor { deviation: f64, limit: f64 },
}

impl fmt::Display for EnvelopeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnvelopeWarning::LargeFlowFraction { ratio, limit } => {
                write!(f, "moved mass fraction {ratio:.4} per step exceeds {limit}")
            }
            EnvelopeWarning::FarFromAnchor { deviation, limit } => write!(
                f,
                "mass is {:.1}% away from the linearization anchor (limit {:.0}%)",
                deviation * 100.0,
                limit * 100.0
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub state: CavernState,
    pub warnings: Vec<EnvelopeWarning>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for kind in ModelKind::ALL {
            assert_eq!(kind.name().parse::<ModelKind>().unwrap(), kind);
        }
        assert!("newton".parse::<ModelKind>().is_err());
        for kind in ModelKind::ALL {
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{}\"", kind.name()));
        }
    }

    #[test]
    fn mass_balance_is_bitwise() {
        let params = CavernParams::huntorf();
        let s = CavernState::from_pressure_temperature(56e5, 310.0, &params).unwrap();
        for kind in ModelKind::ALL {
            for (mode, mdot) in [
                (Mode::Charge, 49.1226),
                (Mode::Discharge, 189.6677),
                (Mode::Idle, 0.0),
            ] {
                let n = kind.step(&s, mode, mdot, 60.0, &params).unwrap().state;
                let expected = match mode {
                    Mode::Charge => s.mass + mdot * 60.0,
                    Mode::Discharge => s.mass - mdot * 60.0,
                    Mode::Idle => s.mass,
                };
                assert_eq!(n.mass, expected, "{kind} {mode:?}");
                assert_eq!(n.t, 60.0);
            }
        }
    }

    #[test]
    fn envelope_warnings() {
        let params = CavernParams::huntorf();
        let s = CavernState::from_pressure_temperature(56e5, 310.0, &params).unwrap();
        let big = 0.2 * s.mass / 3600.0;
        let out = ModelKind::BiLinear
            .step(&s, Mode::Discharge, big, 3600.0, &params)
            .unwrap();
        assert!(matches!(
            out.warnings[..],
            [EnvelopeWarning::LargeFlowFraction { .. }]
        ));
        let out = ModelKind::ExactWithHeatTransfer
            .step(&s, Mode::Charge, 0.07 * s.mass / 3600.0, 3600.0, &params)
            .unwrap();
        assert_eq!(out.warnings.len(), 1);

        let far = CavernState::from_pressure_temperature(20e5, 310.0, &params).unwrap();
        let out = ModelKind::BiLinear
            .step(&far, Mode::Idle, 0.0, 60.0, &params)
            .unwrap();
        assert!(matches!(
            out.warnings[..],
            [EnvelopeWarning::FarFromAnchor { .. }]
        ));
        assert!(out.warnings[0].to_string().contains("anchor"));
    }
}
