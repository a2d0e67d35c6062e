//! Reference integrator and the one-shot exact step with heat transfer.
//!
//! Both compose the same two exact operators: the staged adiabatic flow
//! update and the exponential wall relaxation at frozen mass. The one-shot
//! step applies them once in sequence; the oracle Strang-splits the step
//! into short sub-intervals (half relaxation, flow, half relaxation).

use crate::error::{CavernError, Result};
use crate::models::charge::charge_step_exact;
use crate::models::discharge::discharge_step_exact;
use crate::models::idle::relax_temperature;
use crate::thermo::{check_flow, CavernParams, CavernState, Mode};

/// Longest oracle sub-interval used when no explicit count is given, s.
pub const DEFAULT_ORACLE_SUBSTEP: f64 = 0.1;

/// Substep count keeping every sub-interval at or below
/// [`DEFAULT_ORACLE_SUBSTEP`].
pub fn default_substeps(dt: f64) -> u32 {
    let n = (dt / DEFAULT_ORACLE_SUBSTEP - 1e-9).ceil();
    n.clamp(1.0, u32::MAX as f64) as u32
}

/// Exact adiabatic update for a mode; idle is the identity.
pub fn adiabatic_step(
    state: &CavernState,
    mode: Mode,
    mdot: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    match mode {
        Mode::Charge => charge_step_exact(state, mdot, dt, params),
        Mode::Discharge => discharge_step_exact(state, mdot, dt, params),
        Mode::Idle => {
            state.check()?;
            Ok(CavernState {
                t: state.t + dt,
                ..*state
            })
        }
    }
}

fn with_temperature(state: CavernState, temperature: f64, params: &CavernParams) -> CavernState {
    CavernState {
        temperature,
        pressure: state.mass * params.gas_constant() * temperature / params.volume(),
        ..state
    }
}

/// Exact flow update followed by exact relaxation over the whole step.
pub fn exact_step_with_heat(
    state: &CavernState,
    mode: Mode,
    mdot: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    check_flow(mode, mdot)?;
    let after_flow = adiabatic_step(state, mode, mdot, dt, params)?;
    if params.heat_transfer_coefficient() == 0.0 {
        return Ok(after_flow);
    }
    let temperature = relax_temperature(after_flow.mass, after_flow.temperature, dt, params);
    Ok(with_temperature(after_flow, temperature, params))
}

/// Fine-step reference solution of one step.
pub fn oracle_step(
    state: &CavernState,
    mode: Mode,
    mdot: f64,
    dt: f64,
    params: &CavernParams,
    substeps: u32,
) -> Result<CavernState> {
    if substeps == 0 {
        return Err(CavernError::NoSubsteps);
    }
    check_flow(mode, mdot)?;
    state.check()?;
    let h = dt / f64::from(substeps);
    let half = 0.5 * h;
    let heat = params.heat_transfer_coefficient() > 0.0;

    let mut cur = *state;
    for _ in 0..substeps {
        if heat {
            let t = relax_temperature(cur.mass, cur.temperature, half, params);
            cur = with_temperature(cur, t, params);
        }
        cur = adiabatic_step(&cur, mode, mdot, h, params)?;
        if heat {
            let t = relax_temperature(cur.mass, cur.temperature, half, params);
            cur = with_temperature(cur, t, params);
        }
    }
    // Pin the bookkeeping to the single-step values so mass balance and
    // timestamps are reproducible regardless of the substep count.
    let mass = state.mass + mode.mass_sign() * (mdot * dt);
    Ok(CavernState {
        t: state.t + dt,
        mass,
        pressure: mass * params.gas_constant() * cur.temperature / params.volume(),
        temperature: cur.temperature,
    })
}
