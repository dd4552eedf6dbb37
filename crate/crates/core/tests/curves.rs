mod common;

use common::{reference_params, rel};
use fracwell::curves::{
    assemble_curve, bourdet_derivative, log_time_grid, parse_csv, parse_json, pressure_curve,
    pressure_values, read_curve, render_csv, write_curve, CurvePoint, OutputFormat,
};
use fracwell::inversion::StehfestScheme;
use fracwell::model::wellbore_pressure_laplace;

#[test]
fn default_grid_has_101_points_and_exact_ends() {
    let g = log_time_grid(1e-2, 1e8, 10).unwrap();
    assert_eq!(g.len(), 101);
    assert_eq!(g[0], 1e-2);
    assert_eq!(*g.last().unwrap(), 1e8);
    assert!(g.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn refinement_keeps_shared_points_bitwise() {
    let params = reference_params().with_orders(0.9, 0.8, 0.7);
    let scheme = StehfestScheme::default();
    let coarse = log_time_grid(1e-2, 1e8, 5).unwrap();
    let fine = log_time_grid(1e-2, 1e8, 10).unwrap();
    let pc = pressure_values(&params, &coarse, &scheme).unwrap();
    let pf = pressure_values(&params, &fine, &scheme).unwrap();
    let mut shared = 0;
    for (t, p) in coarse.iter().zip(&pc) {
        let k = fine
            .iter()
            .position(|x| x == t)
            .expect("coarse time on fine grid");
        assert_eq!(p.to_bits(), pf[k].to_bits(), "t = {t}");
        shared += 1;
    }
    assert_eq!(shared, coarse.len());
}

#[test]
fn derivative_matches_denser_central_differences() {
    let params = reference_params();
    let scheme = StehfestScheme::default();
    let grid = log_time_grid(1e-2, 1e8, 10).unwrap();
    let curve = pressure_curve(&params, &grid, &scheme, 0.0).unwrap();
    let dense = log_time_grid(1e-2, 1e8, 40).unwrap();
    let values = pressure_values(&params, &dense, &scheme).unwrap();
    for point in &curve[1..curve.len() - 1] {
        let k = dense.iter().position(|&x| x == point.t_d).unwrap();
        let fd = (values[k + 1] - values[k - 1]) / (dense[k + 1].ln() - dense[k - 1].ln());
        let d = point.dp_dlnt.unwrap();
        assert!(rel(d, fd) <= 0.02, "t = {}: {d} vs {fd}", point.t_d);
    }
}

#[test]
fn classic_pressure_is_monotone() {
    let grid = log_time_grid(1e-2, 1e8, 10).unwrap();
    let p = pressure_values(&reference_params(), &grid, &StehfestScheme::default()).unwrap();
    assert!(p.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn u_times_pressure_bounded_on_sample_points() {
    let scheme = StehfestScheme::default();
    let params = reference_params().with_orders(0.77, 0.56, 0.6);
    let mut last = f64::INFINITY;
    for t in [1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let worst = scheme
            .sample_points(t)
            .map(|u| u * wellbore_pressure_laplace(&params, u).unwrap())
            .fold(0.0, f64::max);
        assert!(worst.is_finite() && worst <= last, "t = {t}: {worst}");
        last = worst;
    }
}

#[test]
fn bourdet_exact_for_log_and_constant() {
    let grid = log_time_grid(1e-1, 1e3, 7).unwrap();
    let ln: Vec<f64> = grid.iter().map(|t| t.ln()).collect();
    for d in bourdet_derivative(&grid, &ln, 0.0).unwrap() {
        assert!((d.value - 1.0).abs() < 1e-12);
    }
    let flat = vec![3.0; grid.len()];
    assert!(bourdet_derivative(&grid, &flat, 0.4)
        .unwrap()
        .iter()
        .all(|d| d.value == 0.0));
}

#[test]
fn bourdet_of_linear_time_at_forty_per_decade() {
    let grid = log_time_grid(1e-2, 1e2, 40).unwrap();
    let d = bourdet_derivative(&grid, &grid, 0.0).unwrap();
    for (i, di) in d.iter().enumerate().take(grid.len() - 1).skip(1) {
        assert!(!di.one_sided);
        assert!(rel(di.value, grid[i]) < 1e-3);
    }
    assert!(d[0].one_sided && d[grid.len() - 1].one_sided);
}

#[test]
fn bourdet_rejects_bad_input() {
    assert!(bourdet_derivative(&[1.0, 2.0], &[1.0, 2.0], 0.0).is_err());
    assert!(bourdet_derivative(&[1.0, 2.0, 3.0], &[1.0, 2.0], 0.0).is_err());
    assert!(bourdet_derivative(&[1.0, 3.0, 2.0], &[1.0, 2.0, 3.0], 0.0).is_err());
}

#[test]
fn csv_lines() {
    let one = [CurvePoint::new(1.0, 2.0, Some(0.5))];
    assert_eq!(render_csv(&one), "t_D,p_w,dp_w_dlnt\n1.0,2.0,0.5\n");
    let none = [CurvePoint::new(1.0, 2.0, None)];
    assert_eq!(render_csv(&none), "t_D,p_w,dp_w_dlnt\n1.0,2.0,\n");
}

#[test]
fn round_trip_through_files() {
    let grid = log_time_grid(1e-2, 1e4, 3).unwrap();
    let values: Vec<f64> = grid.iter().map(|t| (1.0 + t).ln() / 3.0).collect();
    let mut points = assemble_curve(&grid, &values, 0.0).unwrap();
    points[2].dp_dlnt = None;
    let dir = tempfile::tempdir().unwrap();
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let path = dir.path().join(format!("c.{}", format.extension()));
        write_curve(&points, format, &path).unwrap();
        let back = read_curve(&path, format).unwrap();
        assert_eq!(back.len(), points.len());
        for (a, b) in back.iter().zip(&points) {
            assert_eq!(a.t_d.to_bits(), b.t_d.to_bits());
            assert_eq!(a.p_w.to_bits(), b.p_w.to_bits());
            assert_eq!(a.dp_dlnt.map(f64::to_bits), b.dp_dlnt.map(f64::to_bits));
        }
    }
    let text = std::fs::read_to_string(dir.path().join("c.json")).unwrap();
    assert!(text.contains("\"dp_w_dlnt\": null"));
    assert_eq!(parse_json(&text).unwrap(), points);
    let csv = std::fs::read_to_string(dir.path().join("c.csv")).unwrap();
    assert_eq!(parse_csv(&csv).unwrap(), points);
}

#[test]
fn write_errors_name_the_path() {
    let points = [CurvePoint::new(1.0, 2.0, None)];
    let path = std::path::Path::new("/nonexistent-dir/x.csv");
    let err = write_curve(&points, OutputFormat::Csv, path).unwrap_err();
    assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    assert_eq!(err.exit_code(), 3);
    assert!(write_curve(
        &[],
        OutputFormat::Csv,
        std::path::Path::new("/tmp/empty.csv")
    )
    .is_err());
}
