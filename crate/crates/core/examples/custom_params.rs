//! A different cavern and a mixed operating day built in code.
//!
//! The second Huntorf cavern (169,000 m³) takes the rest of the 108 and
//! 417 kg/s compressor and turbine trains.

use caes_cavern::thermo::units;
use caes_cavern::validate::{run, Scenario, Segment};
use caes_cavern::{CavernParams, ModelKind, ParamValues};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::new(ParamValues {
        volume: 169_000.0,
        wall_area: 28_000.0,
        heat_transfer_coefficient: 20.0,
        ..ParamValues::default()
    })?;
    let day = Scenario::new(
        "day",
        units::bar(48.0),
        units::celsius(35.0),
        vec![
            Segment::charge(58.8774, units::hours(8.0)),
            Segment::idle(units::hours(4.0)),
            Segment::discharge(227.3323, units::hours(3.0)),
            Segment::idle(units::hours(9.0)),
        ],
    )?;
    let trace = run(&day, ModelKind::BiLinear, 900.0, &params)?;
    for w in &trace.warnings {
        println!("warning at {} s: {}", w.t, w.message);
    }
    for r in trace.records.iter().step_by(8) {
        println!(
            "{:>5.1} h  {:>8.3} bar  {:>7.2} C",
            r.t / 3600.0,
            units::to_bar(r.pressure),
            units::to_celsius(r.temperature)
        );
    }
    Ok(())
}
