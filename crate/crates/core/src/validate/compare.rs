use serde::Serialize;

use super::{Record, SimulationTrace};
use crate::error::{CavernError, Result};
use crate::thermo::units;

/// Accuracy of one trace against a reference.
///
/// Relative errors divide by the reference value at the record. Final
/// errors are signed, trace minus reference. `final_rel_t_celsius` divides
/// the final temperature error by the reference in °C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub records: usize,
    pub mare_p: f64,
    pub mare_t: f64,
    pub max_abs_p: f64,
    pub max_abs_t: f64,
    pub final_err_p: f64,
    pub final_err_t: f64,
    pub final_rel_p: f64,
    pub final_rel_t: f64,
    pub final_rel_t_celsius: f64,
}

/// Compares `a` against the reference `b` record by record.
pub fn compare(a: &SimulationTrace, b: &SimulationTrace) -> Result<ErrorReport> {
    if a.scenario != b.scenario {
        return Err(CavernError::TraceMismatch(format!(
            "scenario `{}` vs `{}`",
            a.scenario, b.scenario
        )));
    }
    if a.records.len() != b.records.len() {
        return Err(CavernError::TraceMismatch(format!(
            "{} records vs {}",
            a.records.len(),
            b.records.len()
        )));
    }
    if let Some((x, y)) = a.records.iter().zip(&b.records).find(|(x, y)| x.t != y.t) {
        return Err(CavernError::TraceMismatch(format!(
            "timestamp {} s vs {} s",
            x.t, y.t
        )));
    }
    Ok(compare_records(&a.records, &b.records))
}

fn compare_records(a: &[Record], b: &[Record]) -> ErrorReport {
    let n = a.len();
    let (mut sum_p, mut sum_t, mut max_p, mut max_t) = (0.0, 0.0, 0.0_f64, 0.0_f64);
    for (x, y) in a.iter().zip(b) {
        let dp = (x.pressure - y.pressure).abs();
        let dt = (x.temperature - y.temperature).abs();
        sum_p += dp / y.pressure;
        sum_t += dt / y.temperature;
        max_p = max_p.max(dp);
        max_t = max_t.max(dt);
    }
    let (fa, fb) = (a[n - 1], b[n - 1]);
    let final_err_p = fa.pressure - fb.pressure;
    let final_err_t = fa.temperature - fb.temperature;
    ErrorReport {
        records: n,
        mare_p: sum_p / n as f64,
        mare_t: sum_t / n as f64,
        max_abs_p: max_p,
        max_abs_t: max_t,
        final_err_p,
        final_err_t,
        final_rel_p: final_err_p / fb.pressure,
        final_rel_t: final_err_t / fb.temperature,
        final_rel_t_celsius: final_err_t / units::to_celsius(fb.temperature),
    }
}
