use caes_cavern::models::{
    charge_closed_form, charge_stage1, charge_step_bilinear, charge_step_exact,
    discharge_step_bilinear, discharge_step_exact, export_step_coefficients, idle_step_bilinear,
    idle_step_exact, oracle_step, virtual_states, Point,
};
use caes_cavern::thermo::{adiabatic_invariant, units};
use caes_cavern::validate::{compare, run, Scenario, Segment};
use caes_cavern::{CavernParams, CavernState, Mode, ModelKind};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn second_difference(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = f(0.5 * (a + b));
    (f(a) - 2.0 * mid + f(b)).abs() / mid.abs().max(1e-300)
}

type Setter = fn(&mut Point, f64);

fn params() -> CavernParams {
    CavernParams::huntorf()
}

prop_compose! {
    fn cavern_state()(p_bar in 20.0..80.0_f64, t_c in 5.0..80.0_f64) -> CavernState {
        CavernState::from_pressure_temperature(units::bar(p_bar), units::celsius(t_c), &params())
            .unwrap()
    }
}

prop_compose! {
    /// State, flow rate and step with ṁΔt/m_s at most 0.1.
    fn flow_step()(s in cavern_state(), mdot in 0.1..400.0_f64, dt in 0.5..1800.0_f64)
        -> (CavernState, f64, f64)
    {
        let dt = dt.min(0.1 * s.mass / mdot);
        (s, mdot, dt)
    }
}

fn mode_strategy() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Charge), Just(Mode::Discharge), Just(Mode::Idle)]
}

fn bilinear(s: &CavernState, mode: Mode, mdot: f64, dt: f64, p: &CavernParams) -> CavernState {
    match mode {
        Mode::Charge => charge_step_bilinear(s, mdot, dt, p).unwrap(),
        Mode::Discharge => discharge_step_bilinear(s, mdot, dt, p).unwrap(),
        Mode::Idle => idle_step_bilinear(s, dt, p).unwrap(),
    }
}

proptest! {
    #[test]
    fn staged_charge_equals_closed_form((s, mdot, dt) in flow_step()) {
        let p = params();
        let a = charge_step_exact(&s, mdot, dt, &p).unwrap();
        let b = charge_closed_form(&s, mdot, dt, &p).unwrap();
        prop_assert!(rel(a.pressure, b.pressure) <= 1e-10);
        prop_assert!(rel(a.temperature, b.temperature) <= 1e-10);
    }

    #[test]
    fn exact_states_obey_gas_law((s, mdot, dt) in flow_step(), mode in mode_strategy()) {
        let p = params();
        let mdot = if mode == Mode::Idle { 0.0 } else { mdot };
        for model in [ModelKind::ExactAdiabatic, ModelKind::ExactWithHeatTransfer] {
            let n = model.step(&s, mode, mdot, dt, &p).unwrap().state;
            prop_assert!(n.ideal_gas_residual(&p) <= 1e-10);
        }
    }

    #[test]
    fn mass_balance_is_exact((s, mdot, dt) in flow_step(), mode in mode_strategy()) {
        let p = params();
        let mdot = if mode == Mode::Idle { 0.0 } else { mdot };
        let expected = match mode {
            Mode::Charge => s.mass + mdot * dt,
            Mode::Discharge => s.mass - mdot * dt,
            Mode::Idle => s.mass,
        };
        for model in [
            ModelKind::ExactAdiabatic,
            ModelKind::ExactWithHeatTransfer,
            ModelKind::BiLinear,
            ModelKind::ConstantTemperature,
        ] {
            prop_assert_eq!(model.step(&s, mode, mdot, dt, &p).unwrap().state.mass, expected);
        }
        let o = oracle_step(&s, mode, mdot, dt, &p, 4).unwrap();
        prop_assert_eq!(o.mass, expected);
    }

    #[test]
    fn discharge_keeps_adiabatic_invariant((s, mdot, dt) in flow_step()) {
        let p = params();
        let n = discharge_step_exact(&s, mdot, dt, &p).unwrap();
        let k = p.adiabatic_index();
        let a = adiabatic_invariant(s.temperature, s.pressure, k).unwrap();
        let b = adiabatic_invariant(n.temperature, n.pressure, k).unwrap();
        prop_assert!(rel(b, a) <= 1e-12);
    }

    #[test]
    fn charge_stage3_keeps_mixture_invariant((s, mdot, dt) in flow_step()) {
        let p = params();
        let v = virtual_states(&s, mdot, dt, &p).unwrap();
        let n = charge_step_exact(&s, mdot, dt, &p).unwrap();
        let c = adiabatic_invariant(n.temperature, n.pressure, p.adiabatic_index()).unwrap();
        prop_assert!(rel(c, v.c1) <= 1e-12);
    }

    #[test]
    fn bilinear_is_affine_in_flow(s in cavern_state(), dt in 1.0..600.0_f64) {
        let p = params();
        let hi = 0.1 * s.mass / dt;
        for mode in [Mode::Charge, Mode::Discharge] {
            let f = |m: f64| bilinear(&s, mode, m, dt, &p);
            prop_assert!(second_difference(|m| f(m).pressure, 0.1 * hi, hi) <= 1e-12);
            prop_assert!(second_difference(|m| f(m).temperature, 0.1 * hi, hi) <= 1e-12);
        }
    }

    #[test]
    fn mass_weighted_forms_are_affine_in_each_state_variable(
        s in cavern_state(), dt in 1.0..600.0_f64, mdot in 0.0..200.0_f64, mode in mode_strategy()
    ) {
        let p = params();
        let c = export_step_coefficients(&s, mode, dt, &p).unwrap();
        let base = Point::from_state(&s, mdot);
        let axes: [(Setter, f64); 3] = [
            (|pt, v| pt.pressure = v, s.pressure),
            (|pt, v| pt.temperature = v, s.temperature),
            (|pt, v| pt.mass = v, s.mass),
        ];
        for (i, (set, x)) in axes.iter().enumerate() {
            let at = |v: f64| { let mut pt = base; set(&mut pt, v); pt };
            prop_assert!(second_difference(|v| c.temperature.rhs(&at(v)), 0.8 * x, 1.2 * x) <= 1e-12);
            // idle pressure carries an m_s² term
            if !(mode == Mode::Idle && i == 2) {
                prop_assert!(second_difference(|v| c.pressure.rhs(&at(v)), 0.8 * x, 1.2 * x) <= 1e-12);
            }
        }
    }

    #[test]
    fn exported_coefficients_reproduce_step(
        (s, mdot, dt) in flow_step(), mode in mode_strategy()
    ) {
        let p = params();
        let mdot = if mode == Mode::Idle { 0.0 } else { mdot };
        let c = export_step_coefficients(&s, mode, dt, &p).unwrap();
        let n = bilinear(&s, mode, mdot, dt, &p);
        prop_assert!(rel(c.pressure_at(mdot), n.pressure) <= 1e-12);
        prop_assert!(rel(c.temperature_at(mdot), n.temperature) <= 1e-12);
        if mode == Mode::Idle {
            prop_assert_eq!((c.beta_p, c.beta_t), (0.0, 0.0));
        }
    }

    #[test]
    fn without_heat_or_flow_nothing_moves(s in cavern_state(), dt in 0.1..1e5_f64) {
        let p = params().with_heat_transfer_coefficient(0.0).unwrap();
        for n in [
            charge_step_exact(&s, 0.0, dt, &p).unwrap(),
            discharge_step_exact(&s, 0.0, dt, &p).unwrap(),
            idle_step_exact(&s, dt, &p).unwrap(),
            charge_step_bilinear(&s, 0.0, dt, &p).unwrap(),
            discharge_step_bilinear(&s, 0.0, dt, &p).unwrap(),
            idle_step_bilinear(&s, dt, &p).unwrap(),
        ] {
            prop_assert_eq!((n.mass, n.pressure, n.temperature), (s.mass, s.pressure, s.temperature));
        }
    }

    #[test]
    fn discharge_without_heat_is_truncated_adiabat((s, mdot, dt) in flow_step()) {
        let p = params().with_heat_transfer_coefficient(0.0).unwrap();
        let n = discharge_step_bilinear(&s, mdot, dt, &p).unwrap();
        let x = mdot * dt / s.mass;
        let k = p.adiabatic_index();
        prop_assert_eq!(n.pressure, (1.0 - k * x) * s.pressure);
        prop_assert_eq!(n.temperature, (1.0 - (k - 1.0) * x) * s.temperature);
    }

    #[test]
    fn charging_raises_pressure_and_temperature((s, mdot, dt) in flow_step()) {
        let p = params().with_heat_transfer_coefficient(0.0).unwrap();
        let n = charge_step_exact(&s, mdot, dt, &p).unwrap();
        prop_assert!(n.pressure > s.pressure);
        // T' = (1+x)^(k-2) (T + x T_in1)
        let x = mdot * dt / s.mass;
        let t_in1 = charge_stage1(&s, mdot, dt, &p).unwrap().t_in1;
        let rises = s.temperature + x * t_in1 > s.temperature * (1.0 + x).powf(2.0 - p.adiabatic_index());
        prop_assert_eq!(n.temperature > s.temperature, rises);
    }

    #[test]
    fn charging_heats_across_operating_band(
        p_bar in 46.0..70.0_f64, t_c in 15.0..60.0_f64, mdot in 1.0..200.0_f64, dt in 1.0..600.0_f64
    ) {
        let p = params().with_heat_transfer_coefficient(0.0).unwrap();
        let s = CavernState::from_pressure_temperature(units::bar(p_bar), units::celsius(t_c), &p).unwrap();
        let n = charge_step_exact(&s, mdot, dt, &p).unwrap();
        prop_assert!(n.temperature > s.temperature);
    }

    #[test]
    fn idle_gap_shrinks(s in cavern_state(), dt in 1.0..7200.0_f64) {
        let p = params();
        let tw = p.wall_temperature();
        prop_assume!((s.temperature - tw).abs() > 1e-6);
        let n = idle_step_exact(&s, dt, &p).unwrap();
        prop_assert!((n.temperature - tw).abs() < (s.temperature - tw).abs());
        prop_assert_eq!((n.temperature - tw).signum(), (s.temperature - tw).signum());
    }

    #[test]
    fn compare_is_a_premetric(
        p_bar in 40.0..70.0_f64, t_c in 15.0..60.0_f64, mdot in 1.0..100.0_f64
    ) {
        let p = params();
        let s = Scenario::new(
            "prop",
            units::bar(p_bar),
            units::celsius(t_c),
            vec![Segment::charge(mdot, 1800.0), Segment::idle(1800.0), Segment::discharge(mdot, 1800.0)],
        ).unwrap();
        let a = run(&s, ModelKind::BiLinear, 300.0, &p).unwrap();
        let b = run(&s, ModelKind::ExactWithHeatTransfer, 300.0, &p).unwrap();
        let aa = compare(&a, &a).unwrap();
        prop_assert_eq!((aa.mare_p, aa.mare_t, aa.max_abs_p, aa.max_abs_t), (0.0, 0.0, 0.0, 0.0));
        let ab = compare(&a, &b).unwrap();
        let ba = compare(&b, &a).unwrap();
        prop_assert!(ab.mare_p >= 0.0 && ab.mare_t >= 0.0);
        prop_assert_eq!(ab.max_abs_p, ba.max_abs_p);
        prop_assert_eq!(ab.max_abs_t, ba.max_abs_t);
        prop_assert_eq!(ab.final_err_t, -ba.final_err_t);
    }

    #[test]
    fn runs_are_deterministic(p_bar in 40.0..70.0_f64, mdot in 1.0..100.0_f64) {
        let p = params();
        let s = Scenario::new("det", units::bar(p_bar), 310.0, vec![Segment::charge(mdot, 3600.0)])
            .unwrap();
        for model in [ModelKind::BiLinear, ModelKind::ReferenceOracle] {
            prop_assert_eq!(run(&s, model, 600.0, &p).unwrap(), run(&s, model, 600.0, &p).unwrap());
        }
    }
}
