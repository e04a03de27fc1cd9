use serde::Serialize;

use super::{for_each_row, level, Budget, EllipseForm, QuadraticForm};
use crate::error::{check_positive, Result};
use crate::numeric::DoubleDouble;
use crate::FOUR_PI_SQ;

/// Relative tolerance for merging float-valued shells.
pub const SHELL_MERGE_RTOL: f64 = 1e-12;

const MAX_RATIONAL_DEN: u64 = 1 << 20;

/// One jump of `N(t)`: every lattice point with counting-form value `level`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Shell {
    /// Jump location `(2π)² Q_c(n)`.
    pub t: f64,
    #[serde(skip)]
    pub level: DoubleDouble,
    pub multiplicity: u64,
}

/// Jumps of `N(t)` up to `t_max` in strictly increasing order, starting with
/// the origin `(0, 1)`.
///
/// For `θ = 0` with coefficients `a₁⁻²`, `a₂⁻²` that are exact small
/// rationals, shells are grouped by an exact integer key. Otherwise sorted
/// form values within [`SHELL_MERGE_RTOL`] of the first value of a shell
/// are merged, which also merges accidental near-degeneracies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumShells {
    pub t_max: f64,
    pub shells: Vec<Shell>,
}

impl SpectrumShells {
    pub fn len(&self) -> usize {
        self.shells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shells.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Shell> {
        self.shells.iter()
    }

    /// Number of shells with a jump at or below `t`.
    pub fn shells_upto(&self, t: f64) -> usize {
        let lvl = level(t);
        self.shells.partition_point(|s| s.level.le(lvl))
    }

    /// `N(t)` for `t ≤ t_max`.
    pub fn count_at(&self, t: f64) -> u64 {
        self.shells[..self.shells_upto(t)]
            .iter()
            .map(|s| s.multiplicity)
            .sum()
    }
}

pub fn spectrum_shells(form: &EllipseForm, t_max: f64) -> Result<SpectrumShells> {
    spectrum_shells_with_budget(form, t_max, Budget::default().shell_points)
}

pub fn spectrum_shells_with_budget(
    form: &EllipseForm,
    t_max: f64,
    budget: u64,
) -> Result<SpectrumShells> {
    form.validate()?;
    check_positive("t_max", t_max)?;
    let q = form.counting_form();
    let lvl = level(t_max);
    // Area of {Q ≤ lvl} plus a perimeter allowance.
    let estimate = std::f64::consts::PI * lvl / q.det().sqrt() + 8.0 * (q.row_extent(lvl) + 1.0);
    Budget::check(estimate, budget)?;

    let shells = match q.rational_diagonal(MAX_RATIONAL_DEN) {
        Some(rat) => exact_shells(&q, lvl, rat)?,
        None => merged_shells(&q, lvl)?,
    };
    Ok(SpectrumShells { t_max, shells })
}

fn collect_points(q: &QuadraticForm, lvl: f64) -> Result<Vec<(i64, i64)>> {
    let mut points = Vec::new();
    for_each_row(q, lvl, |n1, lo, hi| points.extend((lo..=hi).map(|n2| (n1, n2))))?;
    Ok(points)
}

fn shell_at(q: &QuadraticForm, n: (i64, i64), multiplicity: u64) -> Shell {
    let level = q.eval_dd(n.0, n.1);
    Shell {
        t: FOUR_PI_SQ * level.to_f64(),
        level,
        multiplicity,
    }
}

fn exact_shells(q: &QuadraticForm, lvl: f64, rat: [(u64, u64); 2]) -> Result<Vec<Shell>> {
    let [(p1, q1), (p2, q2)] = rat;
    let (c1, c2) = (u128::from(p1 * q2), u128::from(p2 * q1));
    let key = |(n1, n2): (i64, i64)| {
        c1 * u128::from(n1.unsigned_abs()).pow(2) + c2 * u128::from(n2.unsigned_abs()).pow(2)
    };
    let mut points: Vec<(u128, (i64, i64))> =
        collect_points(q, lvl)?.into_iter().map(|n| (key(n), n)).collect();
    points.sort_unstable_by_key(|&(k, n)| (k, n));
    let mut shells = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let k = points[i].0;
        let j = i + points[i..].partition_point(|p| p.0 == k);
        // The largest double-double value keeps count_at consistent with count.
        let rep = points[i..j]
            .iter()
            .map(|p| p.1)
            .max_by(|a, b| {
                let (x, y) = (q.eval_dd(a.0, a.1), q.eval_dd(b.0, b.1));
                (x.hi, x.lo).partial_cmp(&(y.hi, y.lo)).unwrap()
            })
            .unwrap();
        shells.push(shell_at(q, rep, (j - i) as u64));
        i = j;
    }
    Ok(shells)
}

fn merged_shells(q: &QuadraticForm, lvl: f64) -> Result<Vec<Shell>> {
    let mut values: Vec<(DoubleDouble, (i64, i64))> = collect_points(q, lvl)?
        .into_iter()
        .map(|n| (q.eval_dd(n.0, n.1), n))
        .collect();
    values.sort_unstable_by(|a, b| {
        (a.0.hi, a.0.lo, a.1)
            .partial_cmp(&(b.0.hi, b.0.lo, b.1))
            .unwrap()
    });
    let mut shells: Vec<Shell> = Vec::new();
    let mut first = f64::NAN;
    for (v, n) in values {
        match shells.last_mut() {
            Some(last) if v.hi - first <= SHELL_MERGE_RTOL * first => {
                last.multiplicity += 1;
                let merged = shell_at(q, n, last.multiplicity);
                *last = merged;
            }
            _ => {
                first = v.hi;
                shells.push(shell_at(q, n, 1));
            }
        }
    }
    Ok(shells)
}

/// `min_m |sqrt(Q(m)) − r|` over `m ∈ ℤ²`, the origin included.
///
/// Along a row `Q` is a convex quadratic, so only the integers next to the
/// two roots of `Q = r²` (or next to the vertex when there are none) can be
/// closest. Rows are searched out to `Q ≤ (r + s)²`, doubling `s` until the
/// best distance found is below `s`.
pub fn nearest_norm_gap(q: &QuadraticForm, r: f64) -> f64 {
    let target = r * r;
    let mut best = r.abs();
    let mut reach: f64 = 1.0;
    loop {
        let outer = (r + reach) * (r + reach);
        let rows = q.row_extent(outer).floor() as i64 + 1;
        for n1 in -rows..=rows {
            let (center, half) = q.row_span(n1, target);
            let candidates = [
                (center - half).floor(),
                (center - half).ceil(),
                (center + half).floor(),
                (center + half).ceil(),
                center.round(),
            ];
            for c in candidates {
                let d = (q.eval(n1, c as i64).max(0.0).sqrt() - r).abs();
                best = best.min(d);
            }
        }
        if best <= reach || reach > r + 1.0 {
            return best;
        }
        reach *= 2.0;
    }
}
