//! Isothermal baseline: temperature frozen, pressure follows mass.

use crate::error::Result;
use crate::models::charge::moved_fraction;
use crate::thermo::{check_flow, CavernParams, CavernState, Mode};

pub fn constant_temperature_step(
    state: &CavernState,
    mode: Mode,
    mdot: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    check_flow(mode, mdot)?;
    moved_fraction(state, mdot, dt)?;
    let mass = match mode {
        Mode::Charge => state.mass + mdot * dt,
        Mode::Discharge => state.mass - mdot * dt,
        Mode::Idle => {
            return Ok(CavernState {
                t: state.t + dt,
                ..*state
            })
        }
    };
    Ok(CavernState {
        t: state.t + dt,
        mass,
        pressure: mass * params.gas_constant() * state.temperature / params.volume(),
        temperature: state.temperature,
    })
}
