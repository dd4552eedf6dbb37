//! Curves for several fractional orders beside the classic case.

use std::error::Error;

use fracwell::curves::{log_time_grid, pressure_curve};
use fracwell::inversion::StehfestScheme;
use fracwell::model::TriplePorosityParams;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = log_time_grid(1e-2, 1e8, 4)?;
    let scheme = StehfestScheme::default();
    let triples = [[1.0, 1.0, 1.0], [0.9, 0.8, 0.7], [0.77, 0.56, 0.6]];

    let mut curves = Vec::new();
    for [bm, bf, bv] in triples {
        let params = TriplePorosityParams::reference().with_orders(bm, bf, bv);
        curves.push(pressure_curve(&params, &grid, &scheme, 0.0)?);
    }

    print!("{:>8}", "t_D");
    for b in triples {
        print!("  {:>18}", format!("{b:?}"));
    }
    println!();
    for (i, t) in grid.iter().enumerate().step_by(4) {
        print!("{t:>8.0e}");
        for c in &curves {
            print!("  {:>18.4}", c[i].p_w);
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
