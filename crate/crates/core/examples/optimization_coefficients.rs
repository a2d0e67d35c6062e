//! Coefficients of one bi-linear step for an optimization model.
//!
//! For a fixed state the step is `X' = alpha + beta·ṁ`; across several
//! steps the listed products of a state variable with `ṁ` become the
//! bilinear terms of the constraint.

use caes_cavern::models::{export_step_coefficients, Monomial};
use caes_cavern::validate::charging_scenario;
use caes_cavern::{CavernParams, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = CavernParams::huntorf();
    let s = charging_scenario().initial_state(&params)?;
    for mode in [Mode::Charge, Mode::Discharge, Mode::Idle] {
        let c = export_step_coefficients(&s, mode, 900.0, &params)?;
        println!(
            "{:<9} p' = {:.6e} + {:.6e} mdot   T' = {:.6e} + {:.6e} mdot",
            mode.as_str(),
            c.alpha_p,
            c.beta_p,
            c.alpha_t,
            c.beta_t
        );
        for (eq, term) in c.bilinear_terms() {
            if let Monomial::Product(a, b) = term.monomial {
                println!("          {eq:?}: {:+.6e} * {a:?} * {b:?}", term.coeff);
            }
        }
    }
    let c = export_step_coefficients(&s, Mode::Charge, 900.0, &params)?;
    println!("{}", serde_json::to_string_pretty(&c.temperature)?);
    Ok(())
}
