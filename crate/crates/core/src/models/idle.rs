//! Idle: wall heat exchange at constant mass.

use crate::error::{non_negative, Result};
use crate::thermo::{CavernParams, CavernState, ModelConstants};

/// Exact first-order relaxation of air of mass `mass` towards the wall
/// temperature over `dt`: `T_RW + (T − T_RW) exp(−h_c A_c dt / (m c_v))`.
pub fn relax_temperature(mass: f64, temperature: f64, dt: f64, params: &CavernParams) -> f64 {
    let tw = params.wall_temperature();
    let decay = (-params.relaxation_rate(mass) * dt).exp();
    (temperature - tw) * decay + tw
}

/// Closed-form idle step. The exponent uses the air density of the step,
/// `m_s / V_s`, which idling leaves unchanged.
pub fn idle_step_exact(state: &CavernState, dt: f64, params: &CavernParams) -> Result<CavernState> {
    state.check()?;
    non_negative("dt", dt)?;
    let decay = (-params.relaxation_rate(state.mass) * dt).exp();
    let tw = params.wall_temperature();
    let wall_pressure = state.mass * params.gas_constant() * tw / params.volume();
    Ok(CavernState {
        t: state.t + dt,
        mass: state.mass,
        pressure: state.pressure * decay + wall_pressure * (1.0 - decay),
        temperature: (state.temperature - tw) * decay + tw,
    })
}

/// Idle decay factor linearized in `m_s` about the anchor:
/// `e^(−a_4) (1 + a_4 (m_s − m_av0) / m_av0)`.
pub(crate) fn linearized_decay(mass: f64, dt: f64, params: &CavernParams) -> f64 {
    let a4 = ModelConstants::new(params, dt).a4;
    let anchor = params.anchor_mass();
    let e = (-a4).exp();
    e + a4 * e * (mass - anchor) / anchor
}

/// Bi-linear idle step.
pub fn idle_step_bilinear(
    state: &CavernState,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    state.check()?;
    non_negative("dt", dt)?;
    let g = linearized_decay(state.mass, dt, params);
    let tw = params.wall_temperature();
    let wall_pressure = state.mass * params.gas_constant() * tw / params.volume();
    Ok(CavernState {
        t: state.t + dt,
        mass: state.mass,
        pressure: state.pressure * g + wall_pressure * (1.0 - g),
        temperature: (state.temperature - tw) * g + tw,
    })
}
