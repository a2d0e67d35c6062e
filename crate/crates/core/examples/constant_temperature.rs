//! How far an isothermal cavern model drifts from the reference on a
//! charging day.

use caes_cavern::thermo::units;
use caes_cavern::validate::{charging_scenario, compare, run};
use caes_cavern::{CavernParams, ModelKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    let s = charging_scenario();
    let reference = run(&s, ModelKind::ReferenceOracle, 60.0, &params)?;
    for model in [ModelKind::ConstantTemperature, ModelKind::BiLinear] {
        let trace = run(&s, model, 60.0, &params)?;
        let e = compare(&trace, &reference)?;
        println!(
            "{model:<10} end p {:.3} bar, MARE p {:.2e}, T {:.2e}",
            units::to_bar(trace.last().pressure),
            e.mare_p,
            e.mare_t
        );
    }
    println!(
        "reference  end p {:.3} bar",
        units::to_bar(reference.last().pressure)
    );
    Ok(())
}
