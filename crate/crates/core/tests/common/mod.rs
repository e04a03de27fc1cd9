#![allow(dead_code)]

use lattice_average::EllipseForm;
use rand::Rng;

const KRONROD_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// `(value, error estimate, ∫|f|)` on one panel.
fn kronrod_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS_WEIGHTS[3] * fc;
    let mut magnitude = KRONROD_WEIGHTS[7] * fc.abs();
    for i in 0..7 {
        let (lo, hi) = (f(c - h * KRONROD_NODES[i]), f(c + h * KRONROD_NODES[i]));
        kronrod += KRONROD_WEIGHTS[i] * (lo + hi);
        magnitude += KRONROD_WEIGHTS[i] * (lo.abs() + hi.abs());
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * (lo + hi);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs(), magnitude * h.abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    magnitude: f64,
}

impl Panel {
    fn new(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Self {
        let (value, err, magnitude) = kronrod_panel(f, a, b);
        Self { a, b, value, err, magnitude }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

const MAX_PANELS: usize = 100_000;

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature: the panel with the
/// largest error estimate is bisected until the summed estimate is below
/// `tol` or at the rounding level of `∫|f|`.
pub fn gauss_kronrod(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    // Start from panels shorter than an oscillation period.
    let count = ((b - a) / 2.0).ceil().max(1.0) as usize;
    let h = (b - a) / count as f64;
    let mut heap: std::collections::BinaryHeap<Panel> =
        (0..count).map(|i| Panel::new(&f, a + i as f64 * h, a + (i + 1) as f64 * h)).collect();
    let mut err: f64 = heap.iter().map(|p| p.err).sum();
    let mut magnitude: f64 = heap.iter().map(|p| p.magnitude).sum();
    while err > tol && err > 50.0 * f64::EPSILON * magnitude && heap.len() < MAX_PANELS {
        let worst = heap.pop().unwrap();
        let m = 0.5 * (worst.a + worst.b);
        let (left, right) = (Panel::new(&f, worst.a, m), Panel::new(&f, m, worst.b));
        err += left.err + right.err - worst.err;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    panels.iter().map(|p| p.value).sum()
}

pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64))
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn random_form(rng: &mut impl Rng) -> EllipseForm {
    EllipseForm::new(
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.0..std::f64::consts::PI),
    )
    .unwrap()
}
