//! Bi-linear step equations as explicit coefficient lists.
//!
//! Each step is written as a sum of terms over the variables `m_s`, `p_s`,
//! `T_s` and `ṁ`, where every term is a constant, one variable, or a product
//! of two. Charging and discharging forms give `m_s·X'` (the
//! `mass_weighted_lhs` flag); idle gives `X'` directly. For a fixed state
//! the forms collapse to `X' = alpha + beta·ṁ`.

use serde::Serialize;

use crate::error::{non_negative, Result};
use crate::thermo::{CavernParams, CavernState, Mode, ModelConstants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variable {
    Mass,
    Pressure,
    Temperature,
    Flow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vars", rename_all = "kebab-case")]
pub enum Monomial {
    Constant,
    Linear(Variable),
    Product(Variable, Variable),
}

impl Monomial {
    fn contains(self, var: Variable) -> bool {
        match self {
            Monomial::Constant => false,
            Monomial::Linear(a) => a == var,
            Monomial::Product(a, b) => a == var || b == var,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub coeff: f64,
    pub monomial: Monomial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BilinearForm {
    pub mass_weighted_lhs: bool,
    pub terms: Vec<Term>,
}

/// Values for the four variables of a form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub mass: f64,
    pub pressure: f64,
    pub temperature: f64,
    pub flow: f64,
}

impl Point {
    pub fn from_state(state: &CavernState, flow: f64) -> Self {
        Self {
            mass: state.mass,
            pressure: state.pressure,
            temperature: state.temperature,
            flow,
        }
    }

    fn get(&self, var: Variable) -> f64 {
        match var {
            Variable::Mass => self.mass,
            Variable::Pressure => self.pressure,
            Variable::Temperature => self.temperature,
            Variable::Flow => self.flow,
        }
    }
}

impl BilinearForm {
    fn new(mass_weighted_lhs: bool) -> Self {
        Self {
            mass_weighted_lhs,
            terms: Vec::new(),
        }
    }

    fn push(&mut self, coeff: f64, monomial: Monomial) {
        if coeff != 0.0 {
            self.terms.push(Term { coeff, monomial });
        }
    }

    fn term_value(pt: &Point, term: &Term) -> f64 {
        match term.monomial {
            Monomial::Constant => term.coeff,
            Monomial::Linear(a) => term.coeff * pt.get(a),
            Monomial::Product(a, b) => term.coeff * pt.get(a) * pt.get(b),
        }
    }

    /// Right-hand side of the form at `pt`.
    pub fn rhs(&self, pt: &Point) -> f64 {
        self.terms.iter().map(|t| Self::term_value(pt, t)).sum()
    }

    /// Post-step value `X'` at `pt`.
    pub fn eval(&self, pt: &Point) -> f64 {
        let rhs = self.rhs(pt);
        if self.mass_weighted_lhs {
            rhs / pt.mass
        } else {
            rhs
        }
    }

    /// Terms that multiply `ṁ` by a state variable.
    pub fn flow_products(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| {
            matches!(t.monomial, Monomial::Product(..)) && t.monomial.contains(Variable::Flow)
        })
    }

    /// `(alpha, beta)` with `X' = alpha + beta·ṁ` at the given state.
    fn affine_in_flow(&self, state: &CavernState) -> (f64, f64) {
        let pt = Point::from_state(state, 1.0);
        let (mut alpha, mut beta) = (0.0, 0.0);
        for term in &self.terms {
            let v = Self::term_value(&pt, term);
            if term.monomial.contains(Variable::Flow) {
                beta += v;
            } else {
                alpha += v;
            }
        }
        if self.mass_weighted_lhs {
            (alpha / state.mass, beta / state.mass)
        } else {
            (alpha, beta)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepCoefficients {
    pub mode: Mode,
    pub dt: f64,
    pub alpha_p: f64,
    pub beta_p: f64,
    pub alpha_t: f64,
    pub beta_t: f64,
    pub pressure: BilinearForm,
    pub temperature: BilinearForm,
}

impl StepCoefficients {
    pub fn pressure_at(&self, mdot: f64) -> f64 {
        self.alpha_p + self.beta_p * mdot
    }

    pub fn temperature_at(&self, mdot: f64) -> f64 {
        self.alpha_t + self.beta_t * mdot
    }

    /// Every term that multiplies `ṁ` with a state variable, pressure
    /// equation first.
    pub fn bilinear_terms(&self) -> Vec<(Variable, Term)> {
        let tag = |var: Variable| move |t: &Term| (var, *t);
        self.pressure
            .flow_products()
            .map(tag(Variable::Pressure))
            .chain(
                self.temperature
                    .flow_products()
                    .map(tag(Variable::Temperature)),
            )
            .collect()
    }
}

/// Coefficients of `m^e ≈ (1 − e) m0^e + e m0^(e−1) m`.
fn anchored_power_coeffs(e: f64, anchor: f64) -> (f64, f64) {
    ((1.0 - e) * anchor.powf(e), e * anchor.powf(e - 1.0))
}

fn charge_forms(dt: f64, params: &CavernParams) -> (BilinearForm, BilinearForm) {
    use Monomial::*;
    use Variable::*;
    let k = params.adiabatic_index();
    let h = params.wall_conductance();
    let tw = params.wall_temperature();
    let rv = params.gas_constant() / params.volume();
    let m0 = params.anchor_mass();
    let c = ModelConstants::new(params, dt);
    let dt2 = dt * dt;

    let mut t = BilinearForm::new(true);
    let (a1, b1) = anchored_power_coeffs(k - 1.0, m0);
    let (a2, b2) = anchored_power_coeffs(k - 2.0, m0);
    t.push(1.0, Product(Temperature, Mass));
    t.push(
        (k - 2.0) * dt - 0.5 * h * (k - 2.0) * dt2 / m0,
        Product(Temperature, Flow),
    );
    t.push(c.a3 * dt * a1 - 0.5 * h * c.a3 * dt2 * a2, Linear(Flow));
    t.push(
        c.a3 * dt * b1 - 0.5 * h * c.a3 * dt2 * b2,
        Product(Mass, Flow),
    );
    t.push(h * tw * dt, Constant);
    t.push(-h * dt, Linear(Temperature));

    let mut p = BilinearForm::new(true);
    let (ak, bk) = anchored_power_coeffs(k, m0);
    p.push(1.0, Product(Pressure, Mass));
    p.push((k - 1.0) * dt, Product(Pressure, Flow));
    p.push(c.a2 * dt * ak + 0.5 * h * tw * rv * dt2, Linear(Flow));
    p.push(c.a2 * dt * bk, Product(Mass, Flow));
    p.push(h * tw * dt * rv, Linear(Mass));
    p.push(-h * dt, Linear(Pressure));
    p.push(-0.5 * (k - 1.0) * h * rv * dt2, Product(Temperature, Flow));
    (p, t)
}

fn discharge_forms(dt: f64, params: &CavernParams) -> (BilinearForm, BilinearForm) {
    use Monomial::*;
    use Variable::*;
    let k = params.adiabatic_index();
    let h = params.wall_conductance();
    let tw = params.wall_temperature();
    let rv = params.gas_constant() / params.volume();
    let m0 = params.anchor_mass();
    let dt2 = dt * dt;

    let mut t = BilinearForm::new(true);
    t.push(1.0, Product(Temperature, Mass));
    t.push(
        -(k - 1.0) * dt + h * (k - 1.0) * dt2 / (2.0 * m0),
        Product(Temperature, Flow),
    );
    t.push(h * tw * dt, Constant);
    t.push(-h * dt, Linear(Temperature));

    let mut p = BilinearForm::new(true);
    p.push(1.0, Product(Pressure, Mass));
    p.push(-k * dt, Product(Pressure, Flow));
    p.push(h * rv * dt * tw, Linear(Mass));
    p.push(-h * rv * dt, Product(Mass, Temperature));
    p.push(-0.5 * h * rv * dt2 * tw, Linear(Flow));
    p.push(0.5 * k * h * rv * dt2, Product(Temperature, Flow));
    (p, t)
}

fn idle_forms(dt: f64, params: &CavernParams) -> (BilinearForm, BilinearForm) {
    use Monomial::*;
    use Variable::*;
    let tw = params.wall_temperature();
    let rv = params.gas_constant() / params.volume();
    let m0 = params.anchor_mass();
    let a4 = ModelConstants::new(params, dt).a4;
    let e = (-a4).exp();
    let g0 = e * (1.0 - a4);
    let g1 = e * a4 / m0;

    let mut t = BilinearForm::new(false);
    t.push(g0, Linear(Temperature));
    t.push(g1, Product(Temperature, Mass));
    t.push(tw * (1.0 - g0), Constant);
    t.push(-tw * g1, Linear(Mass));

    let mut p = BilinearForm::new(false);
    p.push(g0, Linear(Pressure));
    p.push(g1, Product(Pressure, Mass));
    p.push(rv * tw * (1.0 - g0), Linear(Mass));
    p.push(-rv * tw * g1, Product(Mass, Mass));
    (p, t)
}

/// Symbolic pressure and temperature forms of one bi-linear step.
pub fn step_forms(mode: Mode, dt: f64, params: &CavernParams) -> (BilinearForm, BilinearForm) {
    match mode {
        Mode::Charge => charge_forms(dt, params),
        Mode::Discharge => discharge_forms(dt, params),
        Mode::Idle => idle_forms(dt, params),
    }
}

/// Affine-in-`ṁ` coefficients of the bi-linear step from `state`.
pub fn export_step_coefficients(
    state: &CavernState,
    mode: Mode,
    dt: f64,
    params: &CavernParams,
) -> Result<StepCoefficients> {
    state.check()?;
    non_negative("dt", dt)?;
    let (pressure, temperature) = step_forms(mode, dt, params);
    let (alpha_p, beta_p) = pressure.affine_in_flow(state);
    let (alpha_t, beta_t) = temperature.affine_in_flow(state);
    Ok(StepCoefficients {
        mode,
        dt,
        alpha_p,
        beta_p,
        alpha_t,
        beta_t,
        pressure,
        temperature,
    })
}
