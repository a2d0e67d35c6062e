//! Final-state error of the bi-linear model as the step grows from 1 s
//! to 1 h.

use caes_cavern::validate::{builtin_scenarios, sweep_table, DEFAULT_INTERVALS};
use caes_cavern::CavernParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    let table = sweep_table(&builtin_scenarios(), &DEFAULT_INTERVALS, &params)?;
    print!("{table}");
    Ok(())
}
