//! The characteristic cubic: coefficients, real roots and the α values
//! that enter the Bessel arguments.

use std::error::Error;

use fracwell::model::{characteristic_coefficients, m_terms, TriplePorosityParams};
use fracwell::roots::{alpha_roots, solve_cubic_real, CubicCoefficients};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // a cubic with known roots
    let c = CubicCoefficients::from_roots([0.5, 2.0, 30.0]);
    let roots = solve_cubic_real(&c)?;
    println!("(x-0.5)(x-2)(x-30): {:?}", roots.real());

    // one root real, two complex
    let c = CubicCoefficients::new(1.0, 0.0, 1.0, 1.0);
    println!(
        "x^3+x+1 has {} real root(s)",
        solve_cubic_real(&c)?.count_real()
    );

    // the reservoir cubic at a few Laplace arguments
    let params = TriplePorosityParams::reference().with_orders(0.9, 0.8, 0.7);
    for u in [1e-4, 1.0, 1e4] {
        let m = m_terms(&params, u)?;
        let cubic = characteristic_coefficients(&m, params.permeabilities());
        let alpha = alpha_roots(&cubic)?;
        println!("u = {u:>7}: alpha = {:?}", alpha.alpha);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
