//! Sixteen hours of charging at 49.1226 kg/s, sampled every two hours.

use caes_cavern::models::virtual_states;
use caes_cavern::thermo::units;
use caes_cavern::validate::{charging_scenario, run};
use caes_cavern::{CavernParams, ModelKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    let scenario = charging_scenario();

    let s0 = scenario.initial_state(&params)?;
    let v = virtual_states(&s0, 49.1226, 1.0, &params)?;
    println!(
        "first second: parcel squeezed into {:.4} m3 at {:.2} K, mixture {:.4} K",
        v.v_in1, v.t_in1, v.t_in2
    );

    let bilinear = run(&scenario, ModelKind::BiLinear, 1.0, &params)?;
    let oracle = run(&scenario, ModelKind::ReferenceOracle, 1.0, &params)?;
    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>10}",
        "hour", "p bil [bar]", "p ref [bar]", "T bil [C]", "T ref [C]"
    );
    for (a, b) in bilinear.records.iter().zip(&oracle.records).step_by(7200) {
        println!(
            "{:>6.0} {:>12.4} {:>12.4} {:>10.3} {:>10.3}",
            a.t / 3600.0,
            units::to_bar(a.pressure),
            units::to_bar(b.pressure),
            units::to_celsius(a.temperature),
            units::to_celsius(b.temperature)
        );
    }
    Ok(())
}
