use rayon::prelude::*;
use serde::Serialize;

use super::{compare, run, ErrorReport, Scenario};
use crate::error::Result;
use crate::models::ModelKind;
use crate::thermo::CavernParams;

/// 1 s, 1 min, 5 min, 10 min, 20 min, 60 min.
pub const DEFAULT_INTERVALS: [f64; 6] = [1.0, 60.0, 300.0, 600.0, 1200.0, 3600.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub interval: f64,
    pub final_err_t: f64,
    pub final_rel_t: f64,
    pub final_rel_t_celsius: f64,
    pub final_err_p: f64,
    pub final_rel_p: f64,
    pub report: ErrorReport,
}

/// Final-state error of the bi-linear model against the oracle at each
/// interval. Rows come back in input order.
pub fn interval_sweep(
    scenario: &Scenario,
    intervals: &[f64],
    params: &CavernParams,
) -> Result<Vec<SweepRow>> {
    for &dt in intervals {
        scenario.check_dt(dt)?;
    }
    intervals
        .par_iter()
        .map(|&dt| {
            let (model, reference) = rayon::join(
                || run(scenario, ModelKind::BiLinear, dt, params),
                || run(scenario, ModelKind::ReferenceOracle, dt, params),
            );
            let report = compare(&model?, &reference?)?;
            Ok(SweepRow {
                interval: dt,
                final_err_t: report.final_err_t,
                final_rel_t: report.final_rel_t,
                final_rel_t_celsius: report.final_rel_t_celsius,
                final_err_p: report.final_err_p,
                final_rel_p: report.final_rel_p,
                report,
            })
        })
        .collect()
}
