//! JSON parameter and scenario files.
//!
//! Files use bar, °C, kg/s and s; values are converted to SI on load.
//!
//! Parameters (every key optional, missing keys keep the Huntorf value):
//!
//! ```json
//! { "volume_m3": 141000, "wall_area_m2": 25000, "h_c": 30, "cv": 718.3,
//!   "gas_constant": 286.7, "k": 1.4, "wall_temperature_c": 40,
//!   "inlet_pressure_bar": 66, "inlet_temperature_c": 50,
//!   "average_density_kg_m3": 62.4 }
//! ```
//!
//! Scenario:
//!
//! ```json
//! { "name": "weekday", "initial_pressure_bar": 50, "initial_temperature_c": 35,
//!   "segments": [ { "mode": "charge", "mdot_kg_s": 49.1226, "duration_s": 28800 },
//!                 { "mode": "idle", "duration_s": 3600 } ] }
//! ```

use std::fs;
use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::error::CavernError;
use crate::thermo::{units, CavernParams, Mode, ParamValues};
use crate::validate::{builtin_scenario, Scenario, Segment};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub volume_m3: Option<f64>,
    pub wall_area_m2: Option<f64>,
    pub h_c: Option<f64>,
    pub cv: Option<f64>,
    pub gas_constant: Option<f64>,
    pub k: Option<f64>,
    pub wall_temperature_c: Option<f64>,
    pub inlet_pressure_bar: Option<f64>,
    pub inlet_temperature_c: Option<f64>,
    pub average_density_kg_m3: Option<f64>,
}

impl ParamsFile {
    pub fn into_params(self) -> Result<CavernParams, CavernError> {
        let d = ParamValues::default();
        CavernParams::new(ParamValues {
            volume: self.volume_m3.unwrap_or(d.volume),
            wall_area: self.wall_area_m2.unwrap_or(d.wall_area),
            heat_transfer_coefficient: self.h_c.unwrap_or(d.heat_transfer_coefficient),
            cv: self.cv.unwrap_or(d.cv),
            gas_constant: self.gas_constant.unwrap_or(d.gas_constant),
            adiabatic_index: self.k.unwrap_or(d.adiabatic_index),
            wall_temperature: self
                .wall_temperature_c
                .map_or(d.wall_temperature, units::celsius),
            inlet_pressure: self.inlet_pressure_bar.map_or(d.inlet_pressure, units::bar),
            inlet_temperature: self
                .inlet_temperature_c
                .map_or(d.inlet_temperature, units::celsius),
            average_density: self.average_density_kg_m3,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentFile {
    mode: Mode,
    #[serde(default)]
    mdot_kg_s: f64,
    duration_s: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    name: String,
    initial_pressure_bar: f64,
    initial_temperature_c: f64,
    segments: Vec<SegmentFile>,
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<Scenario, CavernError> {
        let segments = self
            .segments
            .into_iter()
            .map(|s| Segment {
                mode: s.mode,
                mdot: s.mdot_kg_s,
                duration: s.duration_s,
            })
            .collect();
        Scenario::new(
            self.name,
            units::bar(self.initial_pressure_bar),
            units::celsius(self.initial_temperature_c),
            segments,
        )
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_params(path: Option<&Path>) -> Result<CavernParams, CliError> {
    let Some(path) = path else {
        return Ok(CavernParams::huntorf());
    };
    let file: ParamsFile = read_json(path)?;
    file.into_params()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// A builtin scenario name or the path of a scenario file.
pub fn load_scenario(spec: &str) -> Result<Scenario, CliError> {
    if let Some(s) = builtin_scenario(spec) {
        return Ok(s);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "`{spec}` is neither a builtin scenario (charging, discharging, idle) nor a file"
        )));
    }
    let file: ScenarioFile = read_json(path)?;
    file.into_scenario()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_params_file_is_huntorf() {
        let p: ParamsFile = serde_json::from_str("{}").unwrap();
        assert_eq!(p.into_params().unwrap(), CavernParams::huntorf());
    }

    #[test]
    fn params_units_are_converted() {
        let p: ParamsFile = serde_json::from_str(
            r#"{"h_c": 0, "wall_temperature_c": 30, "inlet_pressure_bar": 70}"#,
        )
        .unwrap();
        let p = p.into_params().unwrap();
        assert_eq!(p.heat_transfer_coefficient(), 0.0);
        assert_eq!(p.wall_temperature(), 303.15);
        assert_eq!(p.inlet_pressure(), 7e6);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ParamsFile>(r#"{"hc": 3}"#).is_err());
    }

    #[test]
    fn scenario_file_round_trip() {
        let f: ScenarioFile = serde_json::from_str(
            r#"{"name": "two", "initial_pressure_bar": 50, "initial_temperature_c": 35,
                "segments": [{"mode": "charge", "mdot_kg_s": 10, "duration_s": 600},
                             {"mode": "idle", "duration_s": 600}]}"#,
        )
        .unwrap();
        let s = f.into_scenario().unwrap();
        assert_eq!(s.initial_pressure(), 50e5);
        assert_eq!(s.segments().len(), 2);
        assert_eq!(s.duration(), 1200.0);
    }

    #[test]
    fn idle_with_flow_rejected() {
        let f: ScenarioFile = serde_json::from_str(
            r#"{"name": "x", "initial_pressure_bar": 50, "initial_temperature_c": 35,
                "segments": [{"mode": "idle", "mdot_kg_s": 3, "duration_s": 600}]}"#,
        )
        .unwrap();
        assert!(f.into_scenario().is_err());
    }
}
