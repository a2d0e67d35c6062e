//! Accuracy of the bi-linear and isothermal models on the three builtin
//! scenarios at a 1 s step.

use caes_cavern::validate::default_accuracy_table;
use caes_cavern::{CavernParams, ModelKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    for model in [ModelKind::BiLinear, ModelKind::ConstantTemperature] {
        let table = default_accuracy_table(model, &params)?;
        println!("{table}");
    }
    Ok(())
}
