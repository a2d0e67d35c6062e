//! Parameter and state types plus the ideal-gas and adiabatic primitives
//! shared by every cavern model.
//!
//! Everything is SI internally (Pa, K, kg, s, m³). The [`units`] helpers
//! convert from the bar / °C values that plant data is usually quoted in.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, CavernError, Result};

pub mod units {
    //! Conversions between plant-facing units and SI.

    pub const PA_PER_BAR: f64 = 1e5;
    pub const KELVIN_OFFSET: f64 = 273.15;
    pub const SECONDS_PER_HOUR: f64 = 3600.0;

    pub fn bar(p_bar: f64) -> f64 {
        p_bar * PA_PER_BAR
    }

    pub fn to_bar(p_pa: f64) -> f64 {
        p_pa / PA_PER_BAR
    }

    pub fn celsius(t_c: f64) -> f64 {
        t_c + KELVIN_OFFSET
    }

    pub fn to_celsius(t_k: f64) -> f64 {
        t_k - KELVIN_OFFSET
    }

    pub fn hours(h: f64) -> f64 {
        h * SECONDS_PER_HOUR
    }
}

/// Pressure at which the default average density is evaluated: the middle
/// of the 46 to 66 bar operating band.
pub const DEFAULT_ANCHOR_PRESSURE: f64 = 56e5;

/// Plain parameter values, SI units. `Default` is the first Huntorf cavern.
///
/// `average_density: None` selects `DEFAULT_ANCHOR_PRESSURE / (R · T_RW)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamValues {
    pub volume: f64,
    pub wall_area: f64,
    pub heat_transfer_coefficient: f64,
    pub cv: f64,
    pub gas_constant: f64,
    pub adiabatic_index: f64,
    pub wall_temperature: f64,
    pub inlet_pressure: f64,
    pub inlet_temperature: f64,
    pub average_density: Option<f64>,
}

impl Default for ParamValues {
    fn default() -> Self {
        Self {
            volume: 141_000.0,
            wall_area: 25_000.0,
            heat_transfer_coefficient: 30.0,
            cv: 718.3,
            gas_constant: 286.7,
            adiabatic_index: 1.4,
            wall_temperature: units::celsius(40.0),
            inlet_pressure: units::bar(66.0),
            inlet_temperature: units::celsius(50.0),
            average_density: None,
        }
    }
}

/// Validated, immutable constants of one cavern.
///
/// The linearization anchor `m_av0 = ρ_av · V_s` is computed at construction
/// and cannot drift from the density it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavernParams {
    volume: f64,
    wall_area: f64,
    heat_transfer_coefficient: f64,
    cv: f64,
    gas_constant: f64,
    adiabatic_index: f64,
    wall_temperature: f64,
    inlet_pressure: f64,
    inlet_temperature: f64,
    average_density: f64,
    anchor_mass: f64,
}

impl CavernParams {
    pub fn new(v: ParamValues) -> Result<Self> {
        let volume = positive("cavern volume", v.volume)?;
        let wall_area = positive("wall area", v.wall_area)?;
        // h_c = 0 switches heat transfer off; the reduction identities need it.
        let heat_transfer_coefficient =
            non_negative("heat transfer coefficient", v.heat_transfer_coefficient)?;
        let cv = positive("c_v", v.cv)?;
        let gas_constant = positive("gas constant", v.gas_constant)?;
        let adiabatic_index = positive("adiabatic index", v.adiabatic_index)?;
        if adiabatic_index <= 1.0 {
            return Err(CavernError::AdiabaticIndex(adiabatic_index));
        }
        let wall_temperature = positive("wall temperature", v.wall_temperature)?;
        let inlet_pressure = positive("inlet pressure", v.inlet_pressure)?;
        let inlet_temperature = positive("inlet temperature", v.inlet_temperature)?;
        let average_density = match v.average_density {
            Some(rho) => positive("average density", rho)?,
            None => DEFAULT_ANCHOR_PRESSURE / (gas_constant * wall_temperature),
        };
        Ok(Self {
            volume,
            wall_area,
            heat_transfer_coefficient,
            cv,
            gas_constant,
            adiabatic_index,
            wall_temperature,
            inlet_pressure,
            inlet_temperature,
            average_density,
            anchor_mass: average_density * volume,
        })
    }

    /// First Huntorf cavern (141,000 m³) with the default anchor density.
    pub fn huntorf() -> Self {
        Self::new(ParamValues::default()).expect("built-in parameters are valid")
    }

    pub fn values(&self) -> ParamValues {
        ParamValues {
            volume: self.volume,
            wall_area: self.wall_area,
            heat_transfer_coefficient: self.heat_transfer_coefficient,
            cv: self.cv,
            gas_constant: self.gas_constant,
            adiabatic_index: self.adiabatic_index,
            wall_temperature: self.wall_temperature,
            inlet_pressure: self.inlet_pressure,
            inlet_temperature: self.inlet_temperature,
            average_density: Some(self.average_density),
        }
    }

    pub fn with_heat_transfer_coefficient(&self, h_c: f64) -> Result<Self> {
        Self::new(ParamValues {
            heat_transfer_coefficient: h_c,
            ..self.values()
        })
    }

    pub fn with_average_density(&self, rho_av: f64) -> Result<Self> {
        Self::new(ParamValues {
            average_density: Some(rho_av),
            ..self.values()
        })
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }
    pub fn wall_area(&self) -> f64 {
        self.wall_area
    }
    pub fn heat_transfer_coefficient(&self) -> f64 {
        self.heat_transfer_coefficient
    }
    pub fn cv(&self) -> f64 {
        self.cv
    }
    pub fn gas_constant(&self) -> f64 {
        self.gas_constant
    }
    pub fn adiabatic_index(&self) -> f64 {
        self.adiabatic_index
    }
    pub fn wall_temperature(&self) -> f64 {
        self.wall_temperature
    }
    pub fn inlet_pressure(&self) -> f64 {
        self.inlet_pressure
    }
    pub fn inlet_temperature(&self) -> f64 {
        self.inlet_temperature
    }
    pub fn average_density(&self) -> f64 {
        self.average_density
    }
    /// `m_av0 = ρ_av · V_s`.
    pub fn anchor_mass(&self) -> f64 {
        self.anchor_mass
    }

    /// `h_c · A_c / c_v`, W/(J/kg) = kg/s per kelvin of driving difference.
    pub fn wall_conductance(&self) -> f64 {
        self.heat_transfer_coefficient * self.wall_area / self.cv
    }

    /// First-order relaxation rate `h_c A_c / (m c_v)` of air of mass `m`.
    pub fn relaxation_rate(&self, mass: f64) -> f64 {
        self.wall_conductance() / mass
    }
}

/// Cavern air at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavernState {
    /// Elapsed time since scenario start, s.
    pub t: f64,
    pub mass: f64,
    pub pressure: f64,
    pub temperature: f64,
}

impl CavernState {
    pub fn new(t: f64, mass: f64, pressure: f64, temperature: f64) -> Result<Self> {
        non_negative("time", t)?;
        positive("mass", mass)?;
        positive("pressure", pressure)?;
        positive("temperature", temperature)?;
        Ok(Self {
            t,
            mass,
            pressure,
            temperature,
        })
    }

    /// State at `t = 0` with the mass implied by `(p, T)`.
    pub fn from_pressure_temperature(p: f64, temp: f64, params: &CavernParams) -> Result<Self> {
        let mass = mass_from_state(p, temp, params)?;
        Self::new(0.0, mass, p, temp)
    }

    /// `|p V − m R T| / (p V)`.
    pub fn ideal_gas_residual(&self, params: &CavernParams) -> f64 {
        let pv = self.pressure * params.volume();
        (pv - self.mass * params.gas_constant() * self.temperature).abs() / pv
    }

    pub(crate) fn check(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("pressure", self.pressure)?;
        positive("temperature", self.temperature)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Charge,
    Discharge,
    Idle,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Charge => "charge",
            Mode::Discharge => "discharge",
            Mode::Idle => "idle",
        }
    }

    /// Sign of the mass change: +1 charging, −1 discharging, 0 idle.
    pub fn mass_sign(self) -> f64 {
        match self {
            Mode::Charge => 1.0,
            Mode::Discharge => -1.0,
            Mode::Idle => 0.0,
        }
    }
}

pub(crate) fn check_flow(mode: Mode, mdot: f64) -> Result<()> {
    non_negative("mass flow rate", mdot)?;
    match mode {
        Mode::Idle if mdot != 0.0 => Err(CavernError::IdleWithFlow(mdot)),
        Mode::Charge | Mode::Discharge if mdot == 0.0 => Err(CavernError::MissingFlow {
            mode: mode.as_str(),
            mdot,
        }),
        _ => Ok(()),
    }
}

/// Number of whole steps of `dt` in `duration`, or an error if `dt` does
/// not divide it.
pub fn step_count(duration: f64, dt: f64) -> Result<u64> {
    positive("dt", dt)?;
    positive("duration", duration)?;
    let n = (duration / dt).round();
    if n < 1.0 || (n * dt - duration).abs() > 1e-9 * duration {
        return Err(CavernError::Indivisible { duration, dt });
    }
    Ok(n as u64)
}

/// One piece of an operating schedule at a fixed step size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowSegment {
    mode: Mode,
    mdot: f64,
    duration: f64,
    dt: f64,
    steps: u64,
}

impl FlowSegment {
    pub fn new(mode: Mode, mdot: f64, duration: f64, dt: f64) -> Result<Self> {
        check_flow(mode, mdot)?;
        let steps = step_count(duration, dt)?;
        Ok(Self {
            mode,
            mdot,
            duration,
            dt,
            steps,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }
    pub fn mdot(&self) -> f64 {
        self.mdot
    }
    pub fn duration(&self) -> f64 {
        self.duration
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn steps(&self) -> u64 {
        self.steps
    }
    /// Mass moved per step, `ṁ · Δt`.
    pub fn step_mass(&self) -> f64 {
        self.mdot * self.dt
    }
}

/// Intermediate states of one virtual charging step.
///
/// Stage 1 squeezes the compressor air into container `V_in1` at the cavern
/// density; stage 2 mixes it with the cavern air; `c_1` then carries the
/// mixture adiabatically back into `V_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VirtualChargeStates {
    pub v_in1: f64,
    pub p_in1: f64,
    pub t_in1: f64,
    pub c0: f64,
    pub t_in2: f64,
    pub p_in2: f64,
    pub c1: f64,
}

/// Stage-1 subset of [`VirtualChargeStates`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpandedInjection {
    pub v_in1: f64,
    pub p_in1: f64,
    pub t_in1: f64,
    pub c0: f64,
}

/// Coefficients of the bi-linear model for a step of length `t`.
///
/// `a2`, `a3` are the factors in `p_in1 = a2 · m_s^k` and `T_in1 = a3 · m_s^(k−1)`,
/// i.e. the compressor air re-expanded to the cavern density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelConstants {
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
}

impl ModelConstants {
    pub fn new(params: &CavernParams, t: f64) -> Self {
        let k = params.adiabatic_index();
        let r = params.gas_constant();
        let v = params.volume();
        let a3 = (r / v).powf(k - 1.0) * params.inlet_temperature().powf(k)
            / params.inlet_pressure().powf(k - 1.0);
        let a2 = r * a3 / v;
        let a4 = params.wall_conductance() * t / params.anchor_mass();
        Self { a2, a3, a4 }
    }
}

/// `p = m R T / V_s`.
pub fn ideal_gas_pressure(mass: f64, temperature: f64, params: &CavernParams) -> Result<f64> {
    positive("mass", mass)?;
    positive("temperature", temperature)?;
    Ok(mass * params.gas_constant() * temperature / params.volume())
}

/// `m = p V_s / (R T)`.
pub fn mass_from_state(pressure: f64, temperature: f64, params: &CavernParams) -> Result<f64> {
    positive("pressure", pressure)?;
    positive("temperature", temperature)?;
    Ok(pressure * params.volume() / (params.gas_constant() * temperature))
}

/// `T^(k/(k−1)) / p`, constant along a reversible adiabat.
pub fn adiabatic_invariant(temperature: f64, pressure: f64, k: f64) -> Result<f64> {
    positive("temperature", temperature)?;
    positive("pressure", pressure)?;
    if k.is_nan() || k <= 1.0 {
        return Err(CavernError::AdiabaticIndex(k));
    }
    Ok(temperature.powf(k / (k - 1.0)) / pressure)
}

/// First-order truncation `1 + r x` of `(1 + x)^r`.
pub fn first_order_binomial(x: f64, r: f64) -> Result<f64> {
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(CavernError::BinomialDomain(x));
    }
    Ok(1.0 + r * x)
}

/// Lagrange bound on `|(1 + x)^r − (1 + r x)|` for `|x| < 1`:
/// `|r(r−1)/2| x² max_{|ξ|≤|x|} (1 + ξ)^(r−2)`.
pub fn binomial_truncation_bound(x: f64, r: f64) -> f64 {
    let lo = (1.0 - x.abs()).powf(r - 2.0);
    let hi = (1.0 + x.abs()).powf(r - 2.0);
    (r * (r - 1.0) / 2.0).abs() * x * x * lo.max(hi)
}
