//! Modified Bessel functions K0 and K1, plain and exponentially scaled.

use std::error::Error;

use fracwell::specfun::{bessel_k0, bessel_k0_scaled, bessel_k1, k01_scaled};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("{:>8} {:>24} {:>24}", "x", "K0(x)", "K1(x)");
    for x in [1e-6, 0.1, 1.0, 2.0, 10.0, 50.0] {
        println!("{x:>8} {:>24e} {:>24e}", bessel_k0(x)?, bessel_k1(x)?);
    }

    // K0(1000) underflows, e^x·K0(x) does not
    let x = 1000.0;
    let (k0s, k1s) = k01_scaled(x)?;
    println!(
        "\nx = {x}: K0 = {:e}, e^x K0 = {k0s}, e^x K1 = {k1s}",
        bessel_k0(x)?
    );
    assert_eq!(bessel_k0_scaled(x)?, k0s);

    // d K0 / dx = -K1
    let (x, h) = (1.5, 1e-5);
    let fd = (bessel_k0(x + h)? - bessel_k0(x - h)?) / (2.0 * h);
    println!("dK0/dx at {x}: {fd:.10}, -K1: {:.10}", -bessel_k1(x)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
