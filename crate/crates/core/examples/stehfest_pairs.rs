//! Stehfest inversion of transforms with known originals.

use std::error::Error;

use fracwell::inversion::{invert, StehfestScheme};

type Pair = (&'static str, fn(f64) -> f64, f64);

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let scheme = StehfestScheme::new(12)?;
    println!("n = 12 weights: {:?}", scheme.weights());

    let t = 2.0;
    let pairs: [Pair; 3] = [
        ("1/u", |u| 1.0 / u, 1.0),
        ("1/u^2", |u| 1.0 / (u * u), t),
        ("1/(u+1)", |u| 1.0 / (u + 1.0), (-t).exp()),
    ];
    for (name, f, exact) in pairs {
        let got = invert(|u| Ok(f(u)), t, &scheme)?;
        println!("{name:>8} at t = {t}: {got:.12} (exact {exact:.12})");
    }

    // accuracy against order for a fractional power
    let exact = t.sqrt() / 0.886_226_925_452_758_f64;
    for n in [6, 10, 14, 18] {
        let got = invert(|u| Ok(u.powf(-1.5)), t, &StehfestScheme::new(n)?)?;
        println!(
            "1/u^1.5, n = {n:>2}: rel error {:.2e}",
            (got / exact - 1.0).abs()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
