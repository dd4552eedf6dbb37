//! From dimensional reservoir data to a pressure in pascals.

use std::error::Error;

use fracwell::inversion::{invert, StehfestScheme};
use fracwell::model::{
    from_dimensionless, to_dimensionless, wellbore_pressure_laplace, PhysicalParams,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let phys = PhysicalParams {
        phi_m: 0.05,
        phi_f: 0.01,
        phi_v: 0.15,
        c_m: 1.5e-9,
        c_f: 3e-9,
        c_v: 2e-9,
        k_m: 1e-16,
        k_f: 5e-14,
        k_v: 2e-15,
        mu: 1e-3,
        a_mf: 5e-12,
        a_mv: 5e-17,
        a_fv: 5e-14,
        r_w: 0.1,
        h: 20.0,
        q0: 2e-3,
        b0: 1.2,
        p_i: 3e7,
    };
    let scaling = to_dimensionless(&phys)?;
    println!(
        "omega = ({:.4}, {:.4}, {:.4})",
        scaling.omega_m(),
        scaling.omega_f,
        scaling.omega_v
    );
    println!(
        "kappa = ({:.4}, {:.4}, {:.4})",
        scaling.kappa_m(),
        scaling.kappa_f,
        scaling.kappa_v
    );
    println!(
        "lambda = ({:e}, {:e}, {:e})",
        scaling.lambda_mf, scaling.lambda_mv, scaling.lambda_fv
    );

    let params = scaling.with_orders(0.9, 0.8, 0.7);
    let scheme = StehfestScheme::default();
    for hours in [1.0, 24.0, 720.0] {
        let t_d = scaling.dimensionless_time(hours * 3600.0);
        let p_d = invert(|u| wellbore_pressure_laplace(&params, u), t_d, &scheme)?;
        let p_w = from_dimensionless(p_d, &scaling, &phys);
        println!(
            "{hours:>5} h: t_D = {t_d:.3e}, p_D = {p_d:.4}, p_w = {:.4} MPa",
            p_w / 1e6
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
