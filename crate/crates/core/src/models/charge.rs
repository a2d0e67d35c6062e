//! Charging: the three-stage virtual-state update and its bi-linear form.

use crate::error::{non_negative, CavernError, Result};
use crate::thermo::{
    adiabatic_invariant, CavernParams, CavernState, ExpandedInjection, ModelConstants,
    VirtualChargeStates,
};

/// Fraction `ṁΔt / m_s` of the cavern mass moved in one step. A step that
/// moves the whole cavern mass is rejected (for charging the virtual
/// container would be as large as the cavern).
pub(crate) fn moved_fraction(state: &CavernState, mdot: f64, dt: f64) -> Result<f64> {
    state.check()?;
    non_negative("mass flow rate", mdot)?;
    non_negative("dt", dt)?;
    let moved = mdot * dt;
    if moved >= state.mass {
        return Err(CavernError::MassRatio {
            moved,
            mass: state.mass,
        });
    }
    Ok(moved / state.mass)
}

/// Stage 1→2: compressor outlet air taken adiabatically to the cavern density.
pub fn charge_stage1(
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<ExpandedInjection> {
    let x = moved_fraction(state, mdot_in, dt)?;
    let k = params.adiabatic_index();
    let r = params.gas_constant();
    let vs = params.volume();
    let c0 = adiabatic_invariant(params.inlet_temperature(), params.inlet_pressure(), k)?;
    let v_in1 = vs * x;
    let p_in1 = c0.powf(k - 1.0) * (r * state.mass / vs).powf(k);
    let t_in1 = (c0 * r * state.mass / vs).powf(k - 1.0);
    Ok(ExpandedInjection {
        v_in1,
        p_in1,
        t_in1,
        c0,
    })
}

/// Stage 2→3: adiabatic mixing of the injected parcel with the cavern air.
pub fn charge_stage2(
    partial: &ExpandedInjection,
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<VirtualChargeStates> {
    moved_fraction(state, mdot_in, dt)?;
    let m_in = mdot_in * dt;
    let m_s = state.mass;
    let t_in2 = (m_in * partial.t_in1 + m_s * state.temperature) / (m_in + m_s);
    let p_in2 = (m_in + m_s) * params.gas_constant() * t_in2 / (params.volume() + partial.v_in1);
    let c1 = adiabatic_invariant(t_in2, p_in2, params.adiabatic_index())?;
    Ok(VirtualChargeStates {
        v_in1: partial.v_in1,
        p_in1: partial.p_in1,
        t_in1: partial.t_in1,
        c0: partial.c0,
        t_in2,
        p_in2,
        c1,
    })
}

/// Stage 3→4: the mixture compressed adiabatically back into `V_s`.
pub fn charge_stage3(
    virt: &VirtualChargeStates,
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> CavernState {
    let k = params.adiabatic_index();
    let mass = state.mass + mdot_in * dt;
    let pressure = virt.c1.powf(k - 1.0) * (params.gas_constant() * mass / params.volume()).powf(k);
    let temperature = (virt.c1 * pressure).powf(1.0 - 1.0 / k);
    CavernState {
        t: state.t + dt,
        mass,
        pressure,
        temperature,
    }
}

/// All virtual intermediate states of one charging step.
pub fn virtual_states(
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<VirtualChargeStates> {
    let partial = charge_stage1(state, mdot_in, dt, params)?;
    charge_stage2(&partial, state, mdot_in, dt, params)
}

/// Exact adiabatic charging step through the virtual states.
pub fn charge_step_exact(
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    let virt = virtual_states(state, mdot_in, dt, params)?;
    if mdot_in * dt == 0.0 {
        return Ok(CavernState {
            t: state.t + dt,
            ..*state
        });
    }
    Ok(charge_stage3(&virt, state, mdot_in, dt, params))
}

/// The same step written with `a_2`, `a_3`:
/// `p' = p_s (1+x)^(k−1) + a_2 (m_s + m_in)^(k−1) m_in`,
/// `T' = T_s (1+x)^(k−2) + a_3 (m_s + m_in)^(k−2) m_in`.
pub fn charge_closed_form(
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    let x = moved_fraction(state, mdot_in, dt)?;
    let k = params.adiabatic_index();
    let c = ModelConstants::new(params, dt);
    let m_in = mdot_in * dt;
    let mass = state.mass + m_in;
    Ok(CavernState {
        t: state.t + dt,
        mass,
        pressure: state.pressure * (1.0 + x).powf(k - 1.0) + c.a2 * mass.powf(k - 1.0) * m_in,
        temperature: state.temperature * (1.0 + x).powf(k - 2.0) + c.a3 * mass.powf(k - 2.0) * m_in,
    })
}

/// One-step linear charging form without heat transfer: the closed form
/// truncated after the first power of `x`.
pub fn charge_step_linear(
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    let x = moved_fraction(state, mdot_in, dt)?;
    let k = params.adiabatic_index();
    let c = ModelConstants::new(params, dt);
    let m_in = mdot_in * dt;
    Ok(CavernState {
        t: state.t + dt,
        mass: state.mass + m_in,
        pressure: state.pressure * (1.0 + (k - 1.0) * x) + c.a2 * state.mass.powf(k - 1.0) * m_in,
        temperature: state.temperature * (1.0 + (k - 2.0) * x)
            + c.a3 * state.mass.powf(k - 2.0) * m_in,
    })
}

/// First-order Taylor expansion of `m^e` about the anchor mass.
pub(crate) fn anchored_power(m: f64, e: f64, anchor: f64) -> f64 {
    anchor.powf(e) + e * anchor.powf(e - 1.0) * (m - anchor)
}

/// Bi-linear charging step with wall heat transfer.
///
/// Evaluates the `m_s·T'` and `m_s·p'` forms and divides by the pre-step
/// mass. Mass powers are linearized about `m_av0`; `ṁ = 0` is allowed and
/// leaves pure first-order wall exchange.
pub fn charge_step_bilinear(
    state: &CavernState,
    mdot_in: f64,
    dt: f64,
    params: &CavernParams,
) -> Result<CavernState> {
    moved_fraction(state, mdot_in, dt)?;
    let k = params.adiabatic_index();
    let r_over_v = params.gas_constant() / params.volume();
    let h = params.wall_conductance();
    let tw = params.wall_temperature();
    let anchor = params.anchor_mass();
    let c = ModelConstants::new(params, dt);

    let m = state.mass;
    let p = state.pressure;
    let temp = state.temperature;
    let moved = mdot_in * dt;

    // m_s·X' = m_s·X + d_X
    let d_temp = (k - 2.0) * moved * temp
        + c.a3 * moved * anchored_power(m, k - 1.0, anchor)
        + h * (tw * dt
            - temp * (dt + 0.5 * (k - 2.0) * moved * dt / anchor)
            - 0.5 * c.a3 * moved * dt * anchored_power(m, k - 2.0, anchor));
    let d_pres = (k - 1.0) * moved * p
        + c.a2 * moved * anchored_power(m, k, anchor)
        + h * ((m + 0.5 * moved) * tw * dt * r_over_v
            - p * dt
            - 0.5 * (k - 1.0) * moved * temp * dt * r_over_v);

    Ok(CavernState {
        t: state.t + dt,
        mass: m + moved,
        pressure: p + d_pres / m,
        temperature: temp + d_temp / m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::{mass_from_state, units};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn charging_start(params: &CavernParams) -> CavernState {
        CavernState::from_pressure_temperature(units::bar(46.0), units::celsius(20.0), params)
            .unwrap()
    }

    #[test]
    fn stage1_container_volume() {
        let params = CavernParams::huntorf();
        let s = CavernState::new(0.0, 7.717e6, 46e5, 293.15).unwrap();
        let st = charge_stage1(&s, 49.1226, 1.0, &params).unwrap();
        let expected = 141_000.0 * 49.1226 / 7.717e6;
        assert!(rel(st.v_in1, expected) < 1e-14);
        assert!((st.v_in1 - 0.8975).abs() < 1e-4);
    }

    #[test]
    fn stage1_satisfies_gas_law() {
        let params = CavernParams::huntorf();
        let s = charging_start(&params);
        for mdot in [1.0, 49.1226, 400.0] {
            let st = charge_stage1(&s, mdot, 1.0, &params).unwrap();
            let lhs = st.p_in1 * st.v_in1;
            let rhs = mdot * params.gas_constant() * st.t_in1;
            assert!(rel(lhs, rhs) < 1e-10);
            let c = adiabatic_invariant(st.t_in1, st.p_in1, 1.4).unwrap();
            assert!(rel(c, st.c0) < 1e-12);
        }
    }

    #[test]
    fn stage1_rejects_oversized_injection() {
        let params = CavernParams::huntorf();
        let s = CavernState::new(0.0, 1000.0, 1e5, 300.0).unwrap();
        assert!(matches!(
            charge_stage1(&s, 1000.0, 1.0, &params),
            Err(CavernError::MassRatio { .. })
        ));
    }

    #[test]
    fn stage2_mixing_identities() {
        let params = CavernParams::huntorf();
        let s = CavernState::new(0.0, 1e6, 1e5, 320.0).unwrap();
        // (nearly) equal masses: plain average; m_in = m_s itself is rejected
        let partial = ExpandedInjection {
            v_in1: params.volume(),
            p_in1: 1e5,
            t_in1: 300.0,
            c0: 1.0,
        };
        let v = charge_stage2(&partial, &s, 1e6 * (1.0 - 1e-12), 1.0, &params).unwrap();
        assert!((v.t_in2 - 310.0).abs() < 1e-9);
        let mut big = s;
        big.mass = 2e6;
        let v = charge_stage2(&partial, &big, 1e6, 1.0, &params).unwrap();
        assert!((v.t_in2 - 940.0 / 3.0).abs() < 1e-12);
        // identical temperatures
        let same = ExpandedInjection {
            t_in1: 320.0,
            ..partial
        };
        let v = charge_stage2(&same, &s, 10.0, 1.0, &params).unwrap();
        assert!((v.t_in2 - 320.0).abs() < 1e-12);
        // vanishing injection
        let v = charge_stage2(&partial, &s, 1e-9, 1.0, &params).unwrap();
        assert!((v.t_in2 - 320.0).abs() < 1e-10);
    }

    #[test]
    fn exact_step_near_start() {
        let params = CavernParams::huntorf();
        let s = charging_start(&params);
        let next = charge_step_exact(&s, 49.1226, 1.0, &params).unwrap();
        assert!(next.pressure > s.pressure && next.temperature > s.temperature);
        assert!(next.pressure - s.pressure < 1e2, "O(1e-4 bar)");
        assert!(next.temperature - s.temperature < 1e-2);
        assert!(next.ideal_gas_residual(&params) < 1e-10);
        assert_eq!(next.mass, s.mass + 49.1226);
    }

    #[test]
    fn exact_matches_closed_form() {
        let params = CavernParams::huntorf();
        let s = charging_start(&params);
        for (mdot, dt) in [(49.1226, 1.0), (49.1226, 3600.0), (300.0, 600.0)] {
            let a = charge_step_exact(&s, mdot, dt, &params).unwrap();
            let b = charge_closed_form(&s, mdot, dt, &params).unwrap();
            assert!(rel(a.pressure, b.pressure) < 1e-10);
            assert!(rel(a.temperature, b.temperature) < 1e-10);
        }
    }

    #[test]
    fn exact_zero_flow_is_identity() {
        let params = CavernParams::huntorf();
        let s = charging_start(&params);
        let n = charge_step_exact(&s, 0.0, 5.0, &params).unwrap();
        assert_eq!(
            (n.mass, n.pressure, n.temperature),
            (s.mass, s.pressure, s.temperature)
        );
        assert_eq!(n.t, 5.0);
    }

    #[test]
    fn bilinear_without_flow_or_heat_is_identity() {
        let params = CavernParams::huntorf()
            .with_heat_transfer_coefficient(0.0)
            .unwrap();
        let s = charging_start(&params);
        let n = charge_step_bilinear(&s, 0.0, 1.0, &params).unwrap();
        assert_eq!(
            (n.mass, n.pressure, n.temperature),
            (s.mass, s.pressure, s.temperature)
        );
    }

    #[test]
    fn bilinear_without_flow_cools_first_order() {
        let params = CavernParams::huntorf();
        let s = CavernState::from_pressure_temperature(60e5, 330.0, &params).unwrap();
        let dt = 1.0;
        let n = charge_step_bilinear(&s, 0.0, dt, &params).unwrap();
        let expected = s.temperature
            + params.wall_conductance() / s.mass * (params.wall_temperature() - s.temperature) * dt;
        assert!(rel(n.temperature, expected) < 1e-14);
        assert!(n.temperature < s.temperature);
    }

    #[test]
    fn bilinear_reduces_to_linear_form_at_anchor() {
        let params = CavernParams::huntorf()
            .with_heat_transfer_coefficient(0.0)
            .unwrap();
        let m = params.anchor_mass();
        let temp = 300.0;
        let s = CavernState::new(
            0.0,
            m,
            m * params.gas_constant() * temp / params.volume(),
            temp,
        )
        .unwrap();
        let a = charge_step_bilinear(&s, 49.1226, 60.0, &params).unwrap();
        let b = charge_step_linear(&s, 49.1226, 60.0, &params).unwrap();
        assert!(rel(a.pressure, b.pressure) < 1e-14);
        assert!(rel(a.temperature, b.temperature) < 1e-14);
    }

    #[test]
    fn linear_form_is_first_order_of_closed_form() {
        let params = CavernParams::huntorf();
        let s = charging_start(&params);
        let mut prev = None;
        for dt in [400.0, 200.0, 100.0] {
            let a = charge_step_linear(&s, 49.1226, dt, &params).unwrap();
            let b = charge_closed_form(&s, 49.1226, dt, &params).unwrap();
            let d = rel(a.temperature, b.temperature);
            if let Some(p) = prev {
                let ratio: f64 = p / d;
                assert!((ratio - 4.0).abs() < 0.1, "ratio {ratio}");
            }
            prev = Some(d);
        }
        let m = mass_from_state(46e5, 293.15, &params).unwrap();
        assert!(rel(m, s.mass) < 1e-15);
    }
}
