//! Lattice series for `A(R)` and the almost periodic functions of its
//! large-`R` expansion.
//!
//! All sums run over `n ∈ ℤ² \ {0}` with frequency `ρ(n) = sqrt(Q_s(n))`:
//!
//! ```text
//! A(R)  = Σ a₁a₂ / (π ρ²) · J₂(ρ √R)
//! g(x)  = −(√2 / π^{3/2}) a₁a₂ Σ ρ^{−5/2} cos(ρx − π/4)
//! g₂(x) = (15√2 / (8π^{3/2})) Σ |n|^{−7/2} sin(|n|x − π/4)      (unit disk)
//! ```
//!
//! The sums converge absolutely but slowly (the tail beyond `ρ > M` is of
//! order `M^{−1/2}`), so they are evaluated with a smooth cutoff
//! `w(ρ/M) = erfc(12 (ρ/M − ½)) / 2`. By Poisson summation the error of the
//! smoothed sum comes only from dual lattice points `m` whose counting-form
//! norm `sqrt(Q_c(m))` lies close to `x/2π`; with `δ` the distance to the
//! nearest one it decays like `exp(−(πδM/12)²)`. The initial cutoff is
//! derived from `δ`, and a second smoothed sum at `3M/4` collected in the
//! same pass gives the error estimate `3|S(M) − S(3M/4)|`. The cutoff grows
//! by 1.5× until the estimate meets `abs_tol`.
//!
//! Points are visited once per symmetry class of the form in a fixed row
//! order with compensated accumulation, so results are reproducible.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::averaging::{average_exact, AverageReport};
use crate::bessel::j2;
use crate::error::{check_positive, Error, Result};
use crate::lattice::{nearest_norm_gap, row_range, Budget, EllipseForm, QuadraticForm, Symmetry, MAX_COORDINATE};
use crate::numeric::CompensatedSum;

/// Steepness of the cutoff weight; `erfc(±6)/2` is below `1e-16`.
const CUTOFF_STEEPNESS: f64 = 12.0;
/// Ratio of the comparison cutoff used for the error estimate.
const ESTIMATE_RATIO: f64 = 0.75;
const ESTIMATE_SAFETY: f64 = 3.0;
const GROWTH: f64 = 1.5;
const MIN_CUTOFF: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    /// Target absolute error of the evaluated sum.
    pub abs_tol: f64,
    /// Hard cap on the cutoff `M` in `sqrt(Q_s)` units.
    pub max_shell_norm: f64,
    /// Cap on lattice points visited by one evaluation.
    #[serde(default = "default_point_budget")]
    pub point_budget: u64,
}

fn default_point_budget() -> u64 {
    Budget::default().series_points
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-6,
            max_shell_norm: 1e6,
            point_budget: default_point_budget(),
        }
    }
}

impl SeriesControl {
    pub fn with_tol(abs_tol: f64) -> Self {
        Self {
            abs_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("abs_tol", self.abs_tol)?;
        check_positive("max_shell_norm", self.max_shell_norm)?;
        Ok(())
    }

    /// First cutoff tried for resonance gap `delta` (in counting-form norm
    /// units).
    ///
    /// Below `12/(πδ)` the smoothed sum has not left its pre-asymptotic
    /// regime and the paired estimate is unreliable.
    fn initial_cutoff(&self, delta: f64) -> f64 {
        (CUTOFF_STEEPNESS / (PI * delta.max(1e-300))).clamp(MIN_CUTOFF, self.max_shell_norm)
    }
}

/// A smoothed lattice sum with its error estimate and the cutoff used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothedSum {
    pub value: f64,
    pub error_estimate: f64,
    pub cutoff: f64,
}

#[inline]
fn cutoff_weight(s: f64) -> f64 {
    if s <= 0.01 {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        0.5 * libm::erfc(CUTOFF_STEEPNESS * (s - 0.5))
    }
}

const WEIGHT_NODES: usize = 8192;

/// `(w, h·w')` at the nodes `i/WEIGHT_NODES`.
fn weight_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let h = 1.0 / WEIGHT_NODES as f64;
        let slope = CUTOFF_STEEPNESS / PI.sqrt();
        (0..=WEIGHT_NODES + 1)
            .map(|i| {
                let s = i as f64 * h;
                let z = CUTOFF_STEEPNESS * (s - 0.5);
                (cutoff_weight(s), -h * slope * (-z * z).exp())
            })
            .collect()
    })
}

/// [`cutoff_weight`] by cubic Hermite interpolation, within about `1e-13`.
#[inline]
fn fast_weight(table: &[(f64, f64)], s: f64) -> f64 {
    if s <= 0.01 {
        return 1.0;
    }
    if s >= 1.0 {
        return 0.0;
    }
    let x = s * WEIGHT_NODES as f64;
    let i = x as usize;
    let u = x - i as f64;
    let (w0, d0) = table[i];
    let (w1, d1) = table[i + 1];
    let u2 = u * u;
    let u3 = u2 * u;
    (2.0 * u3 - 3.0 * u2 + 1.0) * w0 + (u3 - 2.0 * u2 + u) * d0 + (-2.0 * u3 + 3.0 * u2) * w1 + (u3 - u2) * d1
}

/// `(Σ w(ρ/M) f(ρ), Σ w(ρ/(¾M)) f(ρ))` over `n ≠ 0` with `ρ ≤ M`.
fn smoothed_pair(form: &QuadraticForm, cutoff: f64, term: impl Fn(f64) -> f64) -> Result<(f64, f64)> {
    let pair = PairAccumulator::new(cutoff);
    match form.symmetry() {
        Symmetry::Octant => Ok(isotropic_pair(form.xx, pair, term)),
        symmetry => Ok(row_pair(form, symmetry, pair, term)),
    }
}

struct PairAccumulator {
    table: &'static [(f64, f64)],
    inner: f64,
    inv_full: f64,
    inv_inner: f64,
    full: CompensatedSum,
    short: CompensatedSum,
}

impl PairAccumulator {
    fn new(cutoff: f64) -> Self {
        let inner = ESTIMATE_RATIO * cutoff;
        Self {
            table: weight_table(),
            inner,
            inv_full: 1.0 / cutoff,
            inv_inner: 1.0 / inner,
            full: CompensatedSum::new(),
            short: CompensatedSum::new(),
        }
    }

    /// Adds `f` at frequency `rho` to a running pair of plain partial sums.
    #[inline]
    fn add_to(&self, partial: &mut (f64, f64), rho: f64, f: f64) {
        partial.0 += fast_weight(self.table, rho * self.inv_full) * f;
        if rho < self.inner {
            partial.1 += fast_weight(self.table, rho * self.inv_inner) * f;
        }
    }

    fn flush(&mut self, partial: &mut (f64, f64)) {
        self.full.add(partial.0);
        self.short.add(partial.1);
        *partial = (0.0, 0.0);
    }

    fn finish(self) -> (f64, f64) {
        (self.full.value(), self.short.value())
    }
}

const NORM_BLOCK: usize = 1 << 18;
const FLUSH_EVERY: usize = 256;

/// `Q(n) = scale·|n|²`: the terms depend only on `k = |n|²`, so `r₂(k)` is
/// tallied block by block and each distinct frequency is evaluated once.
fn isotropic_pair(scale: f64, mut pair: PairAccumulator, term: impl Fn(f64) -> f64) -> (f64, f64) {
    let cutoff = 1.0 / pair.inv_full;
    let k_max = ((cutoff * cutoff / scale).floor() as u64).max(1);
    let rows = (k_max as f64).sqrt() as u64 + 1;
    // Next unvisited n₂ of each row n₁, over n₁ ≥ n₂ ≥ 0.
    let mut cursor: Vec<u64> = vec![0; rows as usize + 1];
    let mut done_below = 1u64;
    let mut mult = vec![0u32; NORM_BLOCK];
    let mut partial = (0.0, 0.0);
    let mut block_start = 1u64;
    while block_start <= k_max {
        let block_end = (block_start + NORM_BLOCK as u64).min(k_max + 1);
        for n1 in done_below..=rows {
            let base = n1 * n1;
            if base >= block_end {
                break;
            }
            let mut n2 = cursor[n1 as usize];
            while n2 <= n1 {
                let k = base + n2 * n2;
                if k >= block_end {
                    break;
                }
                let orbit = if n2 == 0 || n2 == n1 { 4 } else { 8 };
                mult[(k - block_start) as usize] += orbit;
                n2 += 1;
            }
            cursor[n1 as usize] = n2;
            if n2 > n1 && n1 == done_below {
                done_below += 1;
            }
        }
        let mut pending = 0;
        for (offset, m) in mult[..(block_end - block_start) as usize].iter_mut().enumerate() {
            if *m == 0 {
                continue;
            }
            let rho = (scale * (block_start + offset as u64) as f64).sqrt();
            pair.add_to(&mut partial, rho, f64::from(*m) * term(rho));
            *m = 0;
            pending += 1;
            if pending == FLUSH_EVERY {
                pair.flush(&mut partial);
                pending = 0;
            }
        }
        pair.flush(&mut partial);
        block_start = block_end;
    }
    pair.finish()
}

/// Row enumeration of a half plane or quadrant; each row is summed plainly.
fn row_pair(
    form: &QuadraticForm,
    symmetry: Symmetry,
    mut pair: PairAccumulator,
    term: impl Fn(f64) -> f64,
) -> (f64, f64) {
    let cutoff = 1.0 / pair.inv_full;
    let level = cutoff * cutoff;
    let rows = form.row_extent(level).floor() as i64 + 1;
    let mut row = (0.0, 0.0);
    for n1 in 0..=rows {
        let Some((lo, hi)) = row_range(form, level, n1) else { continue };
        let mut visit = |n2: i64, orbit: f64| {
            let rho = form.eval(n1, n2).sqrt();
            pair.add_to(&mut row, rho, orbit * term(rho));
        };
        if symmetry == Symmetry::Quadrant {
            if n1 > 0 {
                visit(0, 2.0);
            }
            let orbit = if n1 == 0 { 2.0 } else { 4.0 };
            for n2 in 1..=hi {
                visit(n2, orbit);
            }
        } else {
            for n2 in if n1 == 0 { 1 } else { lo }..=hi {
                visit(n2, 2.0);
            }
        }
        pair.flush(&mut row);
    }
    pair.finish()
}

/// Share of the lattice points actually visited.
fn symmetry_fraction(symmetry: Symmetry) -> f64 {
    match symmetry {
        Symmetry::Octant => 0.125,
        Symmetry::Quadrant => 0.25,
        Symmetry::HalfPlane => 0.5,
    }
}

/// Runs the cutoff schedule for a sum whose resonances sit at counting-form
/// norm `r`.
fn adaptive_sum(
    form: &EllipseForm,
    r: f64,
    ctl: &SeriesControl,
    term: impl Fn(f64) -> f64 + Copy,
) -> Result<SmoothedSum> {
    ctl.validate()?;
    let series = form.series_form();
    let delta = nearest_norm_gap(&form.counting_form(), r);
    let points_per_area = PI / series.det().sqrt() * symmetry_fraction(series.symmetry());
    let affordable = (ctl.point_budget as f64 / points_per_area).sqrt();
    let min_cutoff = MIN_CUTOFF * series.xx.max(series.yy).sqrt();
    let mut cutoff = ctl
        .initial_cutoff(delta)
        .min(affordable)
        .max(min_cutoff)
        .min(ctl.max_shell_norm);
    loop {
        Budget::check(points_per_area * cutoff * cutoff, ctl.point_budget)?;
        if series.row_extent(cutoff * cutoff).max(series.column_extent(cutoff * cutoff)) >= MAX_COORDINATE {
            return Err(Error::CountOverflow { t: cutoff * cutoff });
        }
        let (full, short) = smoothed_pair(&series, cutoff, term)?;
        let estimate = ESTIMATE_SAFETY * (full - short).abs();
        if estimate <= ctl.abs_tol {
            return Ok(SmoothedSum {
                value: full,
                error_estimate: estimate,
                cutoff,
            });
        }
        if cutoff >= ctl.max_shell_norm {
            return Err(Error::ToleranceUnreachable {
                tol: ctl.abs_tol,
                estimate,
                cutoff,
                max_shell_norm: ctl.max_shell_norm,
            });
        }
        cutoff = (cutoff * GROWTH).min(ctl.max_shell_norm);
    }
}

fn bessel_term(form: &EllipseForm, r: f64) -> impl Fn(f64) -> f64 + Copy {
    let scale = form.area_factor() / PI;
    let sqrt_r = r.sqrt();
    move |rho| scale / (rho * rho) * j2(rho * sqrt_r)
}

fn g1_term(form: &EllipseForm, x: f64) -> impl Fn(f64) -> f64 + Copy {
    let scale = -(2.0f64).sqrt() / PI.powf(1.5) * form.area_factor();
    let (sp, cp) = FRAC_PI_4.sin_cos();
    move |rho| {
        let (s, c) = (rho * x).sin_cos();
        scale / (rho * rho * rho.sqrt()) * (c * cp + s * sp)
    }
}

fn g2_term(x: f64) -> impl Fn(f64) -> f64 + Copy {
    let scale = 15.0 * (2.0f64).sqrt() / (8.0 * PI.powf(1.5));
    let (sp, cp) = FRAC_PI_4.sin_cos();
    move |rho| {
        let (s, c) = (rho * x).sin_cos();
        scale / (rho * rho * rho * rho.sqrt()) * (s * cp - c * sp)
    }
}

/// `A(R)` from the lattice series of `J₂` terms.
pub fn average_bessel(form: &EllipseForm, r: f64, ctl: &SeriesControl) -> Result<f64> {
    average_bessel_detailed(form, r, ctl).map(|s| s.value)
}

pub fn average_bessel_detailed(form: &EllipseForm, r: f64, ctl: &SeriesControl) -> Result<SmoothedSum> {
    form.validate()?;
    check_positive("R", r)?;
    adaptive_sum(form, r.sqrt() / (2.0 * PI), ctl, bessel_term(form, r))
}

/// The smoothed series at a fixed cutoff, without error control.
pub fn average_bessel_at_cutoff(form: &EllipseForm, r: f64, cutoff: f64) -> Result<f64> {
    form.validate()?;
    check_positive("R", r)?;
    check_positive("cutoff", cutoff)?;
    smoothed_pair(&form.series_form(), cutoff, bessel_term(form, r)).map(|p| p.0)
}

/// The almost periodic function `g` (`g₁`) of the first-order expansion.
pub fn g1(form: &EllipseForm, x: f64, ctl: &SeriesControl) -> Result<f64> {
    g1_detailed(form, x, ctl).map(|s| s.value)
}

pub fn g1_detailed(form: &EllipseForm, x: f64, ctl: &SeriesControl) -> Result<SmoothedSum> {
    form.validate()?;
    check_positive("x", x)?;
    adaptive_sum(form, x / (2.0 * PI), ctl, g1_term(form, x))
}

pub fn g1_at_cutoff(form: &EllipseForm, x: f64, cutoff: f64) -> Result<f64> {
    form.validate()?;
    check_positive("x", x)?;
    check_positive("cutoff", cutoff)?;
    smoothed_pair(&form.series_form(), cutoff, g1_term(form, x)).map(|p| p.0)
}

/// The second almost periodic function `g₂`, unit disk only.
pub fn g2(x: f64, ctl: &SeriesControl) -> Result<f64> {
    g2_detailed(x, ctl).map(|s| s.value)
}

pub fn g2_detailed(x: f64, ctl: &SeriesControl) -> Result<SmoothedSum> {
    check_positive("x", x)?;
    adaptive_sum(&EllipseForm::unit_disk(), x / (2.0 * PI), ctl, g2_term(x))
}

pub fn g2_at_cutoff(x: f64, cutoff: f64) -> Result<f64> {
    check_positive("x", x)?;
    check_positive("cutoff", cutoff)?;
    smoothed_pair(&EllipseForm::unit_disk().series_form(), cutoff, g2_term(x)).map(|p| p.0)
}

/// `Σ_{j ≤ order} g_j(√R) R^{1/4 − j/2}` for `order ∈ {1, 2}`.
///
/// `g₂` is only available for the unit disk; order 2 is rejected for other
/// forms.
pub fn asymptotic_average(form: &EllipseForm, r: f64, order: u32, ctl: &SeriesControl) -> Result<f64> {
    form.validate()?;
    check_positive("R", r)?;
    match order {
        1 => Ok(g1(form, r.sqrt(), ctl)? * r.powf(-0.25)),
        2 if form.is_unit_disk() => {
            let x = r.sqrt();
            Ok(g1(form, x, ctl)? * r.powf(-0.25) + g2(x, ctl)? * r.powf(-0.75))
        }
        2 => Err(Error::UnsupportedOrder { order }),
        _ => Err(Error::invalid("order", format!("must be 1 or 2, got {order}"))),
    }
}

/// Every path for one `R`; the second-order value only for the unit disk.
pub fn average_report(form: &EllipseForm, r: f64, ctl: &SeriesControl) -> Result<AverageReport> {
    let exact = average_exact(form, r)?;
    let series = average_bessel(form, r, ctl)?;
    let x = r.sqrt();
    let first = g1(form, x, ctl)? * r.powf(-0.25);
    let second = if form.is_unit_disk() {
        Some(first + g2(x, ctl)? * r.powf(-0.75))
    } else {
        None
    };
    AverageReport::new(r, exact, series, first, second)
}
