//! Full Laplace-space solution at one u, with its structural residuals.

use std::error::Error;

use fracwell::model::{checked_assembly, field_from_assembly, TriplePorosityParams};

fn show(label: &str, values: [Option<f64>; 3]) {
    let cells: Vec<String> = values
        .iter()
        .map(|v| v.map_or("-".to_string(), |x| format!("{x:.6e}")))
        .collect();
    println!("{label}: {}", cells.join("  "));
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let params = TriplePorosityParams::reference().with_orders(0.77, 0.56, 0.6);
    let asm = checked_assembly(&params, 1.0)?;

    let m = &asm.mterms;
    println!("m1..m6 = {:?}", [m.m1, m.m2, m.m3, m.m4, m.m5, m.m6]);
    println!("alpha  = {:?}", asm.roots.alpha);
    show("A", asm.a_coefficients());
    show("B", asm.b_coefficients());
    show("D", asm.d_coefficients());
    println!("pw_bar = {}", asm.pressure);

    println!("\nresiduals");
    println!("  characteristic  {:.2e}", asm.characteristic_residual());
    println!("  null space      {:.2e}", asm.null_space_residual());
    println!("  boundary        {:.2e}", asm.boundary_residual());
    println!("  triple equality {:.2e}", asm.triple_equality_residual());

    for r in [1.0, 10.0, 100.0] {
        println!("p_bar(r = {r:>5}) = {:?}", field_from_assembly(&asm, r)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
