//! Scenarios, simulation runs, trace comparison and the interval sweep.

mod compare;
mod report;
mod sweep;

pub use compare::{compare, ErrorReport};
pub use report::{
    accuracy_table, bilinear_band, default_accuracy_table, sweep_table, AccuracyRow, AccuracyTable,
    Band, SeparationCheck, SweepTable, SweepTableEntry, SEPARATION_RATIO,
};
pub use sweep::{interval_sweep, SweepRow, DEFAULT_INTERVALS};

use serde::{Deserialize, Serialize};

use crate::error::{positive, CavernError, Result};
use crate::models::{EnvelopeWarning, ModelKind};
use crate::thermo::{check_flow, step_count, units, CavernParams, CavernState, FlowSegment, Mode};

/// Time step of the accuracy runs, s.
pub const VALIDATION_DT: f64 = 1.0;

/// Flow-rate part of a schedule; the step size is chosen per run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub mode: Mode,
    pub mdot: f64,
    pub duration: f64,
}

impl Segment {
    pub fn charge(mdot: f64, duration: f64) -> Self {
        Self {
            mode: Mode::Charge,
            mdot,
            duration,
        }
    }
    pub fn discharge(mdot: f64, duration: f64) -> Self {
        Self {
            mode: Mode::Discharge,
            mdot,
            duration,
        }
    }
    pub fn idle(duration: f64) -> Self {
        Self {
            mode: Mode::Idle,
            mdot: 0.0,
            duration,
        }
    }

    pub fn at_step(&self, dt: f64) -> Result<FlowSegment> {
        FlowSegment::new(self.mode, self.mdot, self.duration, dt)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    name: String,
    initial_pressure: f64,
    initial_temperature: f64,
    segments: Vec<Segment>,
}

impl Scenario {
    /// Pressure in Pa, temperature in K.
    pub fn new(
        name: impl Into<String>,
        initial_pressure: f64,
        initial_temperature: f64,
        segments: Vec<Segment>,
    ) -> Result<Self> {
        positive("initial pressure", initial_pressure)?;
        positive("initial temperature", initial_temperature)?;
        if segments.is_empty() {
            return Err(CavernError::EmptyScenario);
        }
        for s in &segments {
            check_flow(s.mode, s.mdot)?;
            positive("segment duration", s.duration)?;
        }
        Ok(Self {
            name: name.into(),
            initial_pressure,
            initial_temperature,
            segments,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn initial_pressure(&self) -> f64 {
        self.initial_pressure
    }
    pub fn initial_temperature(&self) -> f64 {
        self.initial_temperature
    }
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn initial_state(&self, params: &CavernParams) -> Result<CavernState> {
        CavernState::from_pressure_temperature(
            self.initial_pressure,
            self.initial_temperature,
            params,
        )
    }

    /// Checks that `dt` divides every segment.
    pub fn check_dt(&self, dt: f64) -> Result<u64> {
        self.segments
            .iter()
            .map(|s| step_count(s.duration, dt))
            .sum()
    }
}

/// Maximum charging rate of the first of two caverns sharing a 108 kg/s
/// compressor train in proportion to their volumes.
pub const CHARGING_MDOT: f64 = 49.1226;
/// Discharging rate of the same cavern from the 417 kg/s turbine train.
pub const DISCHARGING_MDOT: f64 = 189.6677;

pub fn charging_scenario() -> Scenario {
    Scenario::new(
        "charging",
        units::bar(46.0),
        units::celsius(20.0),
        vec![Segment::charge(CHARGING_MDOT, units::hours(16.0))],
    )
    .expect("builtin scenario")
}

pub fn discharging_scenario() -> Scenario {
    Scenario::new(
        "discharging",
        units::bar(66.0),
        units::celsius(40.0),
        vec![Segment::discharge(DISCHARGING_MDOT, units::hours(4.0))],
    )
    .expect("builtin scenario")
}

pub fn idle_scenario() -> Scenario {
    Scenario::new(
        "idle",
        units::bar(60.0),
        units::celsius(45.0),
        vec![Segment::idle(units::hours(16.0))],
    )
    .expect("builtin scenario")
}

/// Charging, discharging and idle, in that order.
pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![charging_scenario(), discharging_scenario(), idle_scenario()]
}

pub fn builtin_scenario(name: &str) -> Option<Scenario> {
    builtin_scenarios()
        .into_iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub t: f64,
    pub mass: f64,
    pub pressure: f64,
    pub temperature: f64,
}

impl From<CavernState> for Record {
    fn from(s: CavernState) -> Self {
        Self {
            t: s.t,
            mass: s.mass,
            pressure: s.pressure,
            temperature: s.temperature,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceWarning {
    pub t: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationTrace {
    pub model: ModelKind,
    pub scenario: String,
    pub dt: f64,
    pub records: Vec<Record>,
    pub warnings: Vec<TraceWarning>,
}

impl SimulationTrace {
    pub fn last(&self) -> &Record {
        self.records.last().expect("trace holds the initial record")
    }
}

/// Runs `scenario` with one model at a fixed step.
///
/// Timestamps are `segment_start + i·dt`, not accumulated. A warning is
/// logged when an envelope breach starts, not on every step it persists.
pub fn run(
    scenario: &Scenario,
    model: ModelKind,
    dt: f64,
    params: &CavernParams,
) -> Result<SimulationTrace> {
    let total = scenario.check_dt(dt)?;
    let segments: Vec<FlowSegment> = scenario
        .segments
        .iter()
        .map(|s| s.at_step(dt))
        .collect::<Result<_>>()?;

    let mut state = scenario.initial_state(params)?;
    let mut records = Vec::with_capacity(total as usize + 1);
    records.push(Record::from(state));
    let mut warnings = Vec::new();
    let mut active: Vec<EnvelopeWarning> = Vec::new();
    let mut start = 0.0;

    for seg in &segments {
        for i in 1..=seg.steps() {
            let t = start + i as f64 * dt;
            let out = model
                .step(&state, seg.mode(), seg.mdot(), dt, params)
                .map_err(|e| CavernError::Step {
                    t,
                    source: Box::new(e),
                })?;
            for w in &out.warnings {
                if !active
                    .iter()
                    .any(|a| std::mem::discriminant(a) == std::mem::discriminant(w))
                {
                    warnings.push(TraceWarning {
                        t,
                        message: w.to_string(),
                    });
                }
            }
            active = out.warnings;
            state = CavernState { t, ..out.state };
            records.push(Record::from(state));
        }
        start += seg.duration();
    }

    Ok(SimulationTrace {
        model,
        scenario: scenario.name.clone(),
        dt,
        records,
        warnings,
    })
}
