//! An idle cavern relaxing towards the rock-wall temperature.

use caes_cavern::models::{idle_step_bilinear, idle_step_exact};
use caes_cavern::thermo::units;
use caes_cavern::validate::idle_scenario;
use caes_cavern::CavernParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    let s0 = idle_scenario().initial_state(&params)?;
    let tau = s0.mass * params.cv() / (params.heat_transfer_coefficient() * params.wall_area());
    println!("time constant {:.0} s ({:.2} h)", tau, tau / 3600.0);

    let mut bil = s0;
    for hour in 1..=16 {
        bil = idle_step_bilinear(&bil, 3600.0, &params)?;
        let exact = idle_step_exact(&s0, hour as f64 * 3600.0, &params)?;
        if hour % 4 == 0 {
            println!(
                "{hour:>2} h  T {:.4} C (exact {:.4} C)  p {:.4} bar",
                units::to_celsius(bil.temperature),
                units::to_celsius(exact.temperature),
                units::to_bar(bil.pressure)
            );
        }
    }
    Ok(())
}
