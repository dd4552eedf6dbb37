//! Every crate example runs to completion.

#[path = "../examples/bessel_k.rs"]
mod bessel_k;

#[path = "../examples/cubic_roots.rs"]
mod cubic_roots;

#[path = "../examples/laplace_assembly.rs"]
mod laplace_assembly;

#[path = "../examples/stehfest_pairs.rs"]
mod stehfest_pairs;

#[path = "../examples/classic_curve.rs"]
mod classic_curve;

#[path = "../examples/fractional_sweep.rs"]
mod fractional_sweep;

#[path = "../examples/single_medium.rs"]
mod single_medium;

#[path = "../examples/physical_units.rs"]
mod physical_units;

#[test]
fn bessel_k_runs() {
    bessel_k::run_example().unwrap();
}

#[test]
fn cubic_roots_runs() {
    cubic_roots::run_example().unwrap();
}

#[test]
fn laplace_assembly_runs() {
    laplace_assembly::run_example().unwrap();
}

#[test]
fn stehfest_pairs_runs() {
    stehfest_pairs::run_example().unwrap();
}

#[test]
fn classic_curve_runs() {
    classic_curve::run_example().unwrap();
}

#[test]
fn fractional_sweep_runs() {
    fractional_sweep::run_example().unwrap();
}

#[test]
fn single_medium_runs() {
    single_medium::run_example().unwrap();
}

#[test]
fn physical_units_runs() {
    physical_units::run_example().unwrap();
}
