//! CSV and JSON emission with atomic file replacement.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::validate::{AccuracyTable, SimulationTrace, SweepTable};

pub const TRACE_HEADER: &str = "t_s,m_kg,p_pa,T_k";

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<impl ToString>) -> String {
    x.map_or(String::new(), |v| v.to_string())
}

pub fn trace_csv(trace: &SimulationTrace) -> String {
    let mut out = String::with_capacity(80 * (trace.records.len() + 1));
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in &trace.records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(r.t),
            num(r.mass),
            num(r.pressure),
            num(r.temperature)
        );
    }
    out
}

pub fn accuracy_table_csv(table: &AccuracyTable) -> String {
    let mut out = String::from(
        "scenario,model,dt_s,mare_p,mare_t,max_abs_p_pa,max_abs_t_k,band_lower,band_upper,pass_p,pass_t\n",
    );
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.scenario,
            table.model,
            num(table.dt),
            num(r.report.mare_p),
            num(r.report.mare_t),
            num(r.report.max_abs_p),
            num(r.report.max_abs_t),
            opt(r.band.map(|b| num(b.lower))),
            opt(r.band.map(|b| num(b.upper))),
            opt(r.pass_p),
            opt(r.pass_t),
        );
    }
    out
}

pub fn sweep_table_csv(table: &SweepTable) -> String {
    let mut out = String::from(
        "scenario,interval_s,final_err_t_k,final_rel_t,final_rel_t_celsius,final_err_p_pa,final_rel_p\n",
    );
    for s in &table.scenarios {
        for r in &s.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.scenario,
                num(r.interval),
                num(r.final_err_t),
                num(r.final_rel_t),
                num(r.final_rel_t_celsius),
                num(r.final_err_p),
                num(r.final_rel_p)
            );
        }
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Writes `contents` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name")
    })?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
