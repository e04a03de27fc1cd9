//! Exact running averages of the remainder.
//!
//! `N(t)` is a step function, so `∫₀ᴿ N(t) dt = Σ_{t_k ≤ R} m_k (R − t_k)`
//! over its jumps. Both averages below are evaluated that way, with
//! compensated accumulation in ascending jump order.

use serde::Serialize;

use crate::error::{check_positive, Error, Result};
use crate::lattice::{spectrum_shells, EllipseForm, SpectrumShells};
use crate::numeric::CompensatedSum;

/// `A(R)` along the available computation paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageReport {
    pub r: f64,
    pub a_exact: f64,
    pub a_series: f64,
    pub a_asymptotic_1: f64,
    /// Only defined for the unit disk.
    pub a_asymptotic_2: Option<f64>,
    pub diffs: AverageDiffs,
}

/// Pairwise absolute differences between the paths of an [`AverageReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageDiffs {
    pub exact_series: f64,
    pub exact_asymptotic_1: f64,
    pub series_asymptotic_1: f64,
    pub exact_asymptotic_2: Option<f64>,
    pub series_asymptotic_2: Option<f64>,
    pub asymptotic_1_asymptotic_2: Option<f64>,
}

impl AverageReport {
    pub fn new(r: f64, exact: f64, series: f64, asym1: f64, asym2: Option<f64>) -> Result<Self> {
        let all = [r, exact, series, asym1, asym2.unwrap_or(0.0)];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("report", format!("non-finite entry in {all:?}")));
        }
        let d = |a: f64, b: f64| (a - b).abs();
        Ok(Self {
            r,
            a_exact: exact,
            a_series: series,
            a_asymptotic_1: asym1,
            a_asymptotic_2: asym2,
            diffs: AverageDiffs {
                exact_series: d(exact, series),
                exact_asymptotic_1: d(exact, asym1),
                series_asymptotic_1: d(series, asym1),
                exact_asymptotic_2: asym2.map(|v| d(exact, v)),
                series_asymptotic_2: asym2.map(|v| d(series, v)),
                asymptotic_1_asymptotic_2: asym2.map(|v| d(asym1, v)),
            },
        })
    }
}

/// `A(R) = (1/R) ∫₀ᴿ D(t) dt`, exactly from the jumps of `N`.
pub fn average_exact(form: &EllipseForm, r: f64) -> Result<f64> {
    check_positive("R", r)?;
    let shells = spectrum_shells(form, r)?;
    average_exact_from_shells(form, &shells, r)
}

/// [`average_exact`] from precomputed shells with `t_max ≥ R`.
pub fn average_exact_from_shells(form: &EllipseForm, shells: &SpectrumShells, r: f64) -> Result<f64> {
    check_positive("R", r)?;
    ensure_covered(shells, r)?;
    let mut acc = CompensatedSum::new();
    for s in &shells.shells[..shells.shells_upto(r)] {
        acc.add(s.multiplicity as f64 * (r - s.t));
    }
    Ok(acc.value() / r - form.area_factor() * r / (8.0 * std::f64::consts::PI))
}

/// `A(R)` for many `R` from a single shell enumeration.
pub fn average_exact_many(form: &EllipseForm, rs: &[f64]) -> Result<Vec<f64>> {
    let Some(r_max) = rs.iter().copied().reduce(f64::max) else {
        return Ok(Vec::new());
    };
    check_positive("R", r_max)?;
    let shells = spectrum_shells(form, r_max)?;
    rs.iter().map(|&r| average_exact_from_shells(form, &shells, r)).collect()
}

/// `Ã(R) = (1/R) ∫₀ᴿ D((2πr)²) dr`. The jumps sit at `r_k = sqrt(Q_c)`
/// and the Weyl part integrates to `a₁a₂πR³/3`.
pub fn average_radius(form: &EllipseForm, r: f64) -> Result<f64> {
    check_positive("R", r)?;
    let shells = spectrum_shells(form, radius_to_t(r))?;
    average_radius_from_shells(form, &shells, r)
}

pub fn average_radius_from_shells(form: &EllipseForm, shells: &SpectrumShells, r: f64) -> Result<f64> {
    check_positive("R", r)?;
    ensure_covered(shells, radius_to_t(r))?;
    let mut acc = CompensatedSum::new();
    for s in &shells.shells[..shells.shells_upto(radius_to_t(r))] {
        acc.add(s.multiplicity as f64 * (r - s.level.to_f64().sqrt()));
    }
    Ok(acc.value() / r - form.area_factor() * std::f64::consts::PI * r * r / 3.0)
}

/// `Ã(R) − A(2πR²) / (2 sqrt(2π))`.
pub fn radius_rescaling_gap(form: &EllipseForm, r: f64) -> Result<f64> {
    check_positive("R", r)?;
    let shells = spectrum_shells(form, radius_to_t(r).max(rescaled_t(r)))?;
    radius_rescaling_gap_from_shells(form, &shells, r)
}

pub fn radius_rescaling_gap_from_shells(form: &EllipseForm, shells: &SpectrumShells, r: f64) -> Result<f64> {
    let radius = average_radius_from_shells(form, shells, r)?;
    let rescaled = average_exact_from_shells(form, shells, rescaled_t(r))?;
    Ok(radius - rescaled / (2.0 * (2.0 * std::f64::consts::PI).sqrt()))
}

/// `(2πr)²`
pub fn radius_to_t(r: f64) -> f64 {
    crate::FOUR_PI_SQ * r * r
}

/// `2πr²`, the argument of `A` in the rescaling relation.
pub fn rescaled_t(r: f64) -> f64 {
    2.0 * std::f64::consts::PI * r * r
}

fn ensure_covered(shells: &SpectrumShells, t: f64) -> Result<()> {
    if t > shells.t_max {
        return Err(Error::invalid(
            "shells",
            format!("enumerated to t = {}, need {t}", shells.t_max),
        ));
    }
    Ok(())
}
