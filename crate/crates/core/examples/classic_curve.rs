//! Classic first-order curve for the reference reservoir, written as CSV.

use std::error::Error;

use fracwell::curves::{log_time_grid, pressure_curve, write_curve, OutputFormat};
use fracwell::inversion::StehfestScheme;
use fracwell::model::TriplePorosityParams;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = TriplePorosityParams::reference();
    let grid = log_time_grid(1e-2, 1e8, 10)?;
    let curve = pressure_curve(&params, &grid, &StehfestScheme::default(), 0.0)?;

    for p in curve.iter().step_by(10) {
        let d = p.dp_dlnt.map_or(String::from("-"), |d| format!("{d:.4}"));
        println!(
            "t_D = {:>8.0e}  p_w = {:>9.4}  dp/dln t = {d}",
            p.t_d, p.p_w
        );
    }

    let dir = std::env::temp_dir().join("fracwell-examples");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("classic.csv");
    write_curve(&curve, OutputFormat::Csv, &path)?;
    println!("{} points written to {}", curve.len(), path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
