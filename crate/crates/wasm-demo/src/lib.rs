//! wasm-bindgen entry points for `www/index.html`.
//!
//! Each export returns a flat `f64` or `i32` array so the page can draw it
//! without any glue beyond the generated bindings.

use lattice_average::averaging::average_exact_from_shells;
use lattice_average::lattice::{lattice_points, remainder, spectrum_shells_with_budget, weyl_term};
use lattice_average::surfaces::SurfaceCount;
use lattice_average::{EllipseForm, Result};
use wasm_bindgen::prelude::*;

/// Enumeration cap for the page, small enough to stay interactive.
pub const DEMO_BUDGET: u64 = 4_000_000;

pub const MAX_SAMPLES: usize = 20_000;

fn to_js(e: lattice_average::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn sample_grid(t_max: f64, samples: usize) -> Vec<f64> {
    let n = samples.clamp(2, MAX_SAMPLES);
    (0..n).map(|i| t_max * (i + 1) as f64 / n as f64).collect()
}

/// `[t, D(t), A(t)]` triples on `samples` equally spaced points of `(0, t_max]`.
pub fn remainder_curve(form: &EllipseForm, t_max: f64, samples: usize) -> Result<Vec<f64>> {
    let shells = spectrum_shells_with_budget(form, t_max, DEMO_BUDGET)?;
    let mut out = Vec::with_capacity(3 * samples);
    for t in sample_grid(t_max, samples) {
        let d = shells.count_at(t) as f64 - weyl_term(form, t);
        out.extend([t, d, average_exact_from_shells(form, &shells, t)?]);
    }
    Ok(out)
}

/// `[n₁, n₂]` pairs of the points of `E_t`.
pub fn ellipse_points(form: &EllipseForm, t: f64) -> Result<Vec<i32>> {
    let points = lattice_points(form, t, DEMO_BUDGET)?;
    Ok(points.into_iter().flat_map(|(a, b)| [a as i32, b as i32]).collect())
}

/// `[t, KB residual, PP residual]` triples on `(0, t_max]`.
pub fn surface_residuals(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for t in sample_grid(t_max, samples) {
        let kb = SurfaceCount::klein_bottle(t)?;
        let pp = SurfaceCount::projective_plane(t)?;
        out.extend([t, kb.identity_residual, pp.identity_residual]);
    }
    Ok(out)
}

#[wasm_bindgen(js_name = remainderCurve)]
pub fn remainder_curve_js(a1: f64, a2: f64, theta: f64, t_max: f64, samples: usize) -> std::result::Result<Vec<f64>, JsError> {
    let form = EllipseForm::new(a1, a2, theta).map_err(to_js)?;
    remainder_curve(&form, t_max, samples).map_err(to_js)
}

#[wasm_bindgen(js_name = ellipsePoints)]
pub fn ellipse_points_js(a1: f64, a2: f64, theta: f64, t: f64) -> std::result::Result<Vec<i32>, JsError> {
    let form = EllipseForm::new(a1, a2, theta).map_err(to_js)?;
    ellipse_points(&form, t).map_err(to_js)
}

/// `N(t)` and `D(t)` for the status line.
#[wasm_bindgen(js_name = countSummary)]
pub fn count_summary_js(a1: f64, a2: f64, theta: f64, t: f64) -> std::result::Result<Vec<f64>, JsError> {
    let form = EllipseForm::new(a1, a2, theta).map_err(to_js)?;
    let d = remainder(&form, t).map_err(to_js)?;
    Ok(vec![d + weyl_term(&form, t), d])
}

#[wasm_bindgen(js_name = surfaceResiduals)]
pub fn surface_residuals_js(t_max: f64, samples: usize) -> std::result::Result<Vec<f64>, JsError> {
    surface_residuals(t_max, samples).map_err(to_js)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_average::averaging::average_exact;
    use lattice_average::lattice::count;

    #[test]
    fn curve_matches_core() {
        let disk = EllipseForm::unit_disk();
        let c = remainder_curve(&disk, 1000.0, 50).unwrap();
        assert_eq!(c.len(), 150);
        for row in c.chunks(3) {
            assert!((row[1] - remainder(&disk, row[0]).unwrap()).abs() < 1e-9);
            assert!((row[2] - average_exact(&disk, row[0]).unwrap()).abs() < 1e-12);
        }
        assert_eq!(c[147], 1000.0);
    }

    #[test]
    fn points_match_count() {
        let f = EllipseForm::new(2.0, 0.5, 0.3).unwrap();
        let p = ellipse_points(&f, 900.0).unwrap();
        assert_eq!(p.len() as u64, 2 * count(&f, 900.0).unwrap());
        assert!(ellipse_points(&f, 1e9).is_err());
    }

    #[test]
    fn residuals_in_window() {
        let r = surface_residuals(1e4, 500).unwrap();
        assert_eq!(r.len(), 1500);
        assert!(r.chunks(3).all(|row| row[1].abs() <= 0.5 && row[2].abs() <= 0.5));
    }
}
