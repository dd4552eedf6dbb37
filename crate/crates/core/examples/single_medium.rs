//! A triple-porosity model with vanishing secondary media reduces to the
//! single-medium fractional solution.

use std::error::Error;

use fracwell::inversion::{invert, StehfestScheme};
use fracwell::model::{
    single_medium_pressure_laplace, wellbore_pressure_laplace, TriplePorosityParams,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let scheme = StehfestScheme::default();
    for order in [1.0, 0.8, 0.6] {
        let params = TriplePorosityParams::collapsed(order, 1e-12);
        println!("order {order}");
        for t in [1.0, 1e2, 1e4, 1e6] {
            let triple = invert(|u| wellbore_pressure_laplace(&params, u), t, &scheme)?;
            let single = invert(
                |u| single_medium_pressure_laplace(order, u, 1.0),
                t,
                &scheme,
            )?;
            println!("  t_D = {t:>7.0e}: triple {triple:.8}, single {single:.8}");
        }
    }

    // late-time line source for the first-order case
    let t = 1e6;
    let single = invert(|u| single_medium_pressure_laplace(1.0, u, 1.0), t, &scheme)?;
    println!(
        "line source at t_D = {t:e}: {:.8} vs {single:.8}",
        0.5 * (t.ln() + 0.80907)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
