//! Four hours of discharging, with and without wall heat exchange.

use caes_cavern::thermo::units;
use caes_cavern::validate::{discharging_scenario, run};
use caes_cavern::{CavernParams, ModelKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    let adiabatic = params.with_heat_transfer_coefficient(0.0)?;
    let s = discharging_scenario();

    let with_wall = run(&s, ModelKind::BiLinear, 60.0, &params)?;
    let without = run(&s, ModelKind::BiLinear, 60.0, &adiabatic)?;
    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "min", "p [bar]", "T [C]", "T adiab [C]"
    );
    for (a, b) in with_wall.records.iter().zip(&without.records).step_by(30) {
        println!(
            "{:>5.0} {:>12.4} {:>12.3} {:>12.3}",
            a.t / 60.0,
            units::to_bar(a.pressure),
            units::to_celsius(a.temperature),
            units::to_celsius(b.temperature)
        );
    }
    Ok(())
}
