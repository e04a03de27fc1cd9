mod common;

use common::{gauss_kronrod, log_grid, log_log_slope};

#[test]
fn quadrature_of_polynomials_and_trig() {
    let v = gauss_kronrod(|x| x.powi(5), 0.0, 3.0, 1e-12);
    assert!((v - 3f64.powi(6) / 6.0).abs() < 1e-10);
    let v = gauss_kronrod(f64::sin, 0.0, 100.0, 1e-12);
    assert!((v - (1.0 - 100f64.cos())).abs() < 1e-10);
    let v = gauss_kronrod(|x| x.sqrt(), 0.0, 4.0, 1e-12);
    assert!((v - 16.0 / 3.0).abs() < 1e-9);
}

#[test]
fn slope_of_a_power_law() {
    let xs = log_grid(1.0, 1e3, 10);
    assert!((xs[9] - 1e3).abs() < 1e-9);
    let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-1.25)).collect();
    assert!((log_log_slope(&xs, &ys) + 1.25).abs() < 1e-12);
}

#[test]
fn quadrature_stops_at_rounding_level() {
    let exact = |s: f64| -s * s * s.cos() + 2.0 * s * s.sin() + 2.0 * s.cos();
    let v = gauss_kronrod(|s| s * s * s.sin(), 0.0, 200.0, 1e-11);
    assert!((v - (exact(200.0) - exact(0.0))).abs() < 1e-8);
}
