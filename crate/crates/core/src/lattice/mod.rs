//! Lattice-point counting in the ellipses `E_t`, the remainder `D(t)` and
//! the jump structure of `N(t)`.
//!
//! Membership is the closed condition `Q_c(n) ≤ t/(2π)²`, with `Q_c`
//! evaluated in double-double arithmetic and a relative slack of 16 ulps on
//! the right-hand side so that jump points produced by floating point
//! arithmetic, such as `t = (2π·5)²`, count their boundary points.
//! [`count`], [`brute_force_count`] and [`spectrum_shells`] all share that one
//! predicate.

mod form;
mod shells;

pub use form::{EllipseForm, QuadraticForm, Symmetry};
pub use shells::{nearest_norm_gap, spectrum_shells, spectrum_shells_with_budget, Shell, SpectrumShells};

use crate::error::{check_nonnegative, Error, Result};
use crate::FOUR_PI_SQ;

/// Coordinates stay below this so integer monomials are exact in `f64`.
pub(crate) const MAX_COORDINATE: f64 = (1u64 << 26) as f64;

/// Environment variable overriding every enumeration budget.
pub const BUDGET_ENV: &str = "LATTICE_POINT_BUDGET";

/// Caps on the number of lattice points an enumeration may touch.
///
/// Shell enumeration stores every point, so its cap also bounds memory
/// (about 32 bytes per point). The other two only cost time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub brute_force_points: u64,
    pub shell_points: u64,
    pub series_points: u64,
}

impl Budget {
    pub const DEFAULT_BRUTE_FORCE: u64 = 100_000_000;
    pub const DEFAULT_SHELL: u64 = 50_000_000;
    pub const DEFAULT_SERIES: u64 = 2_000_000_000;

    pub const fn fixed() -> Self {
        Self {
            brute_force_points: Self::DEFAULT_BRUTE_FORCE,
            shell_points: Self::DEFAULT_SHELL,
            series_points: Self::DEFAULT_SERIES,
        }
    }

    /// Every budget set to the same value.
    pub const fn uniform(points: u64) -> Self {
        Self {
            brute_force_points: points,
            shell_points: points,
            series_points: points,
        }
    }

    /// Reads [`BUDGET_ENV`]; accepts integers and float notation (`2e9`).
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var(BUDGET_ENV) {
            Ok(raw) => parse_budget(&raw).map(|n| Some(Self::uniform(n))),
            Err(_) => Ok(None),
        }
    }

    pub(crate) fn check(needed: f64, budget: u64) -> Result<()> {
        if !(needed <= budget as f64) {
            return Err(Error::BudgetExceeded {
                needed: needed.min(u64::MAX as f64) as u64,
                budget,
            });
        }
        Ok(())
    }
}

/// The environment override when set and valid, otherwise the fixed defaults.
impl Default for Budget {
    fn default() -> Self {
        Self::from_env().ok().flatten().unwrap_or_else(Self::fixed)
    }
}

fn parse_budget(raw: &str) -> Result<u64> {
    let raw = raw.trim();
    if let Ok(n) = raw.parse::<u64>() {
        return Ok(n);
    }
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 => Ok(v as u64),
        _ => Err(Error::invalid(BUDGET_ENV, format!("not a point count: {raw:?}"))),
    }
}

/// Right-hand side of the membership test `Q_c(n) ≤ level(t)`.
#[inline]
pub fn level(t: f64) -> f64 {
    (t / FOUR_PI_SQ) * (1.0 + 16.0 * f64::EPSILON)
}

/// Visits every row `n₁` meeting `{Q ≤ level}` with its inclusive column
/// range. Float roots are corrected against the exact predicate at both
/// ends, so the ranges are exactly the rows of the predicate's point set.
pub(crate) fn for_each_row(
    form: &QuadraticForm,
    level: f64,
    mut visit: impl FnMut(i64, i64, i64),
) -> Result<()> {
    if level < 0.0 {
        return Ok(());
    }
    let extent = form.row_extent(level);
    if extent.max(form.column_extent(level)) + 2.0 >= MAX_COORDINATE {
        return Err(Error::CountOverflow { t: level * FOUR_PI_SQ });
    }
    let rows = extent.floor() as i64 + 1;
    for n1 in -rows..=rows {
        if let Some((lo, hi)) = row_range(form, level, n1) {
            visit(n1, lo, hi);
        }
    }
    Ok(())
}

#[inline]
pub(crate) fn row_range(form: &QuadraticForm, level: f64, n1: i64) -> Option<(i64, i64)> {
    let inside = |n2: i64| form.eval_dd(n1, n2).le(level);
    let (center, half) = form.row_span(n1, level);
    let mut lo = (center - half).ceil() as i64;
    let mut hi = (center + half).floor() as i64;
    if lo > hi {
        let c = center.round() as i64;
        if !inside(c) {
            return None;
        }
        lo = c;
        hi = c;
    }
    while inside(hi + 1) {
        hi += 1;
    }
    while hi >= lo && !inside(hi) {
        hi -= 1;
    }
    if hi < lo {
        return None;
    }
    while inside(lo - 1) {
        lo -= 1;
    }
    while !inside(lo) {
        lo += 1;
    }
    Some((lo, hi))
}

/// `N(t) = #{n ∈ ℤ² : (2π)² Q_c(n) ≤ t}`, by row enumeration in `O(√t)`.
pub fn count(form: &EllipseForm, t: f64) -> Result<u64> {
    form.validate()?;
    check_nonnegative("t", t)?;
    let q = form.counting_form();
    let mut total: u64 = 0;
    for_each_row(&q, level(t), |_, lo, hi| total += (hi - lo + 1) as u64)?;
    Ok(total)
}

/// The points of `E_t`, row by row, refused when there are more than `budget`.
pub fn lattice_points(form: &EllipseForm, t: f64, budget: u64) -> Result<Vec<(i64, i64)>> {
    form.validate()?;
    check_nonnegative("t", t)?;
    let q = form.counting_form();
    let lvl = level(t);
    Budget::check(std::f64::consts::PI * lvl / q.det().sqrt() + 4.0 * q.row_extent(lvl), budget)?;
    let mut points = Vec::new();
    for_each_row(&q, lvl, |n1, lo, hi| points.extend((lo..=hi).map(|n2| (n1, n2))))?;
    Ok(points)
}

/// `D(t) = N(t) − a₁a₂t/4π`.
pub fn remainder(form: &EllipseForm, t: f64) -> Result<f64> {
    let n = count(form, t)?;
    Ok(n as f64 - weyl_term(form, t))
}

/// `a₁a₂t/4π`, the area of `E_t`.
pub fn weyl_term(form: &EllipseForm, t: f64) -> f64 {
    form.area_factor() * t / (4.0 * std::f64::consts::PI)
}

/// Exhaustive scan of the bounding box of `E_t`; an oracle for [`count`].
pub fn brute_force_count(form: &EllipseForm, t: f64) -> Result<u64> {
    brute_force_count_with_budget(form, t, Budget::default().brute_force_points)
}

pub fn brute_force_count_with_budget(form: &EllipseForm, t: f64, budget: u64) -> Result<u64> {
    form.validate()?;
    check_nonnegative("t", t)?;
    let q = form.counting_form();
    let lvl = level(t);
    let x1 = q.row_extent(lvl).floor() + 1.0;
    let x2 = q.column_extent(lvl).floor() + 1.0;
    Budget::check((2.0 * x1 + 1.0) * (2.0 * x2 + 1.0), budget)?;
    let (x1, x2) = (x1 as i64, x2 as i64);
    let mut total = 0u64;
    for n1 in -x1..=x1 {
        for n2 in -x2..=x2 {
            if q.eval_dd(n1, n2).le(lvl) {
                total += 1;
            }
        }
    }
    Ok(total)
}
