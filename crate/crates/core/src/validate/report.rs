use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    builtin_scenarios, charging_scenario, compare, interval_sweep, run, ErrorReport, Scenario,
    SweepRow, VALIDATION_DT,
};
use crate::error::Result;
use crate::models::ModelKind;
use crate::thermo::CavernParams;

/// Closed interval a MARE must fall in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub lower: f64,
    pub upper: f64,
}

impl Band {
    pub const fn at_most(upper: f64) -> Self {
        Self { lower: 0.0, upper }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower > 0.0 {
            write!(f, "[{:.0e}, {:.0e}]", self.lower, self.upper)
        } else {
            write!(f, "<= {:.0e}", self.upper)
        }
    }
}

/// Accepted bi-linear MARE band for a builtin scenario. The charging band
/// has a floor: a near-zero error there means the reference collapsed onto
/// the model under test.
pub fn bilinear_band(scenario: &str) -> Option<Band> {
    match scenario {
        "charging" => Some(Band {
            lower: 1e-4,
            upper: 5e-3,
        }),
        "discharging" => Some(Band::at_most(5e-3)),
        "idle" => Some(Band::at_most(1e-4)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyRow {
    pub scenario: String,
    pub report: ErrorReport,
    pub band: Option<Band>,
    pub pass_p: Option<bool>,
    pub pass_t: Option<bool>,
}

/// Charging MARE of the isothermal model over the bi-linear model's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparationCheck {
    pub ratio_p: f64,
    pub ratio_t: f64,
    pub required: f64,
    pub pass: bool,
}

pub const SEPARATION_RATIO: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyTable {
    pub model: ModelKind,
    pub dt: f64,
    pub rows: Vec<AccuracyRow>,
    pub separation: Option<SeparationCheck>,
}

impl AccuracyTable {
    /// `false` if any checked band or the separation check failed.
    pub fn passed(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.pass_p != Some(false) && r.pass_t != Some(false))
            && self.separation.is_none_or(|s| s.pass)
    }
}

fn accuracy_row(
    scenario: &Scenario,
    model: ModelKind,
    dt: f64,
    params: &CavernParams,
) -> Result<AccuracyRow> {
    let (a, b) = rayon::join(
        || run(scenario, model, dt, params),
        || run(scenario, ModelKind::ReferenceOracle, dt, params),
    );
    let report = compare(&a?, &b?)?;
    let band = (model == ModelKind::BiLinear)
        .then(|| bilinear_band(scenario.name()))
        .flatten();
    Ok(AccuracyRow {
        scenario: scenario.name().to_string(),
        report,
        band,
        pass_p: band.map(|b| b.contains(report.mare_p)),
        pass_t: band.map(|b| b.contains(report.mare_t)),
    })
}

/// MARE of `model` against the oracle on every scenario at `dt`. For the
/// isothermal model the charging separation from the bi-linear model is
/// checked as well.
pub fn accuracy_table(
    scenarios: &[Scenario],
    model: ModelKind,
    dt: f64,
    params: &CavernParams,
) -> Result<AccuracyTable> {
    let rows = scenarios
        .par_iter()
        .map(|s| accuracy_row(s, model, dt, params))
        .collect::<Result<Vec<_>>>()?;
    let separation = if model == ModelKind::ConstantTemperature {
        let charging = charging_scenario();
        let iso = match rows.iter().find(|r| r.scenario == charging.name()) {
            Some(r) => r.report,
            None => accuracy_row(&charging, model, dt, params)?.report,
        };
        let bil = accuracy_row(&charging, ModelKind::BiLinear, dt, params)?.report;
        let ratio_p = iso.mare_p / bil.mare_p;
        let ratio_t = iso.mare_t / bil.mare_t;
        Some(SeparationCheck {
            ratio_p,
            ratio_t,
            required: SEPARATION_RATIO,
            pass: ratio_p >= SEPARATION_RATIO && ratio_t >= SEPARATION_RATIO,
        })
    } else {
        None
    };
    Ok(AccuracyTable {
        model,
        dt,
        rows,
        separation,
    })
}

/// [`accuracy_table`] over the builtin scenarios at 1 s.
pub fn default_accuracy_table(model: ModelKind, params: &CavernParams) -> Result<AccuracyTable> {
    accuracy_table(&builtin_scenarios(), model, VALIDATION_DT, params)
}

fn verdict(pass: Option<bool>) -> &'static str {
    match pass {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "-",
    }
}

impl fmt::Display for AccuracyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "mean absolute relative error, {} vs oracle, dt = {} s",
            self.model, self.dt
        )?;
        write!(f, "{:<12}", "quantity")?;
        for r in &self.rows {
            write!(f, " {:>12}", r.scenario)?;
        }
        writeln!(f)?;
        for (label, pick) in [("pressure", 0), ("temperature", 1)] {
            write!(f, "{label:<12}")?;
            for r in &self.rows {
                let v = if pick == 0 {
                    r.report.mare_p
                } else {
                    r.report.mare_t
                };
                write!(f, " {v:>12.4e}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:<12}", "band")?;
        for r in &self.rows {
            let b = r.band.map_or("-".to_string(), |b| b.to_string());
            write!(f, " {b:>12}")?;
        }
        writeln!(f)?;
        write!(f, "{:<12}", "verdict p/T")?;
        for r in &self.rows {
            let v = format!("{}/{}", verdict(r.pass_p), verdict(r.pass_t));
            write!(f, " {v:>12}")?;
        }
        writeln!(f)?;
        if let Some(s) = self.separation {
            writeln!(
                f,
                "separation from bi-linear (charging): p x{:.1}, T x{:.1}, need x{} -> {}",
                s.ratio_p,
                s.ratio_t,
                s.required,
                if s.pass { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTableEntry {
    pub scenario: String,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub intervals: Vec<f64>,
    pub scenarios: Vec<SweepTableEntry>,
}

/// Interval sweep over several scenarios.
pub fn sweep_table(
    scenarios: &[Scenario],
    intervals: &[f64],
    params: &CavernParams,
) -> Result<SweepTable> {
    let scenarios = scenarios
        .par_iter()
        .map(|s| {
            Ok(SweepTableEntry {
                scenario: s.name().to_string(),
                rows: interval_sweep(s, intervals, params)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        intervals: intervals.to_vec(),
        scenarios,
    })
}

impl fmt::Display for SweepTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "final-state error, bilinear vs oracle")?;
        writeln!(
            f,
            "{:<12} {:>8} {:>12} {:>9} {:>9} {:>12} {:>9}",
            "scenario", "dt [s]", "dT [K]", "rel [C]", "rel [K]", "dp [bar]", "rel p"
        )?;
        for s in &self.scenarios {
            for r in &s.rows {
                writeln!(
                    f,
                    "{:<12} {:>8} {:>12.4e} {:>8.3}% {:>8.3}% {:>12.4e} {:>8.3}%",
                    s.scenario,
                    r.interval,
                    r.final_err_t,
                    100.0 * r.final_rel_t_celsius,
                    100.0 * r.final_rel_t,
                    r.final_err_p / crate::thermo::units::PA_PER_BAR,
                    100.0 * r.final_rel_p
                )?;
            }
        }
        Ok(())
    }
}
