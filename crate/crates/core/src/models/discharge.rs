//! Discharging: adiabatic expansion of the remaining air and its bi-linear form.

use crate::error::Result;
use crate::models::charge::moved_fraction;
use crate::thermo::{CavernParams, CavernState};

/// Exact adiabatic discharge:
/// `p' = (1 − x)^k p_s`, `T' = (1 − x)^(k−1) T_s`, `x = ṁΔt / m_s`.
pub fn discharge_step_exact(
    state: &CavernState,
    mdot_out: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    let x = moved_fraction(state, mdot_out, dt)?;
    let k = params.adiabatic_index();
    let moved = mdot_out * dt;
    if moved == 0.0 {
        return Ok(CavernState {
            t: state.t + dt,
            ..*state
        });
    }
    Ok(CavernState {
        t: state.t + dt,
        mass: state.mass - moved,
        pressure: (1.0 - x).powf(k) * state.pressure,
        temperature: (1.0 - x).powf(k - 1.0) * state.temperature,
    })
}

/// Bi-linear discharge with wall heat transfer.
///
/// The adiabatic part is the first-order truncation `(1 − k x) p_s`,
/// `(1 − (k−1) x) T_s`; the wall term is added divided by the pre-step mass,
/// so `h_c = 0` returns exactly the truncated adiabatic step.
pub fn discharge_step_bilinear(
    state: &CavernState,
    mdot_out: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    let x = moved_fraction(state, mdot_out, dt)?;
    let k = params.adiabatic_index();
    let h = params.wall_conductance();
    let tw = params.wall_temperature();
    let anchor = params.anchor_mass();
    let r_over_v = params.gas_constant() / params.volume();

    let m = state.mass;
    let p = state.pressure;
    let temp = state.temperature;
    let moved = mdot_out * dt;

    let adiabatic_t = (1.0 - (k - 1.0) * x) * temp;
    let adiabatic_p = (1.0 - k * x) * p;
    let heat_t = h * (tw - temp) * dt + h / (2.0 * anchor) * (k - 1.0) * temp * moved * dt;
    let heat_p =
        h * r_over_v * ((m - 0.5 * moved) * (tw - temp) * dt + 0.5 * (k - 1.0) * temp * moved * dt);

    Ok(CavernState {
        t: state.t + dt,
        mass: m - moved,
        pressure: adiabatic_p + heat_p / m,
        temperature: adiabatic_t + heat_t / m,
    })
}
