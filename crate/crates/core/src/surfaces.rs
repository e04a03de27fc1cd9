//! Eigenvalue counts of rectangular tori, the Klein bottle and the real
//! projective plane, and the identities between them.
//!
//! Every count is taken over integer mode pairs `(j, k)` with eigenvalue
//! `(2π)²(...)` and the closed boundary of [`crate::lattice::level`]. Half
//! integer frequencies are handled by scaling the inequality by 4 and
//! counting on integers.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{check_nonnegative, Error, Result};
use crate::lattice::level;

/// Frequency step of one torus direction, e.g. `1/2` for a side of length 2.
pub type ModeStep = Ratio<u64>;

/// Integer bounds above this could lose exactness in `f64` row arithmetic.
const MAX_SCALED_LEVEL: f64 = 1e30;
const MAX_ROWS: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Surface {
    KleinBottle,
    ProjectivePlane,
}

/// One surface count next to the torus count it is compared with.
///
/// For the Klein bottle `n_torus = N_{T₁,₂}(t)` and the residual is
/// `N_KB − N_T/2`; for the projective plane `n_torus = N_{T₂,₂}(t)` and the
/// residual is `N_PP − N_T/4 − 1/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceCount {
    pub t: f64,
    pub surface: Surface,
    pub n_torus: u64,
    pub n_surface: u64,
    pub identity_residual: f64,
}

impl SurfaceCount {
    pub fn klein_bottle(t: f64) -> Result<Self> {
        let n_torus = count_torus_rect(ModeStep::from_integer(1), ModeStep::new(1, 2), t)?;
        let n_surface = count_klein_bottle(t)?;
        Ok(Self {
            t,
            surface: Surface::KleinBottle,
            n_torus,
            n_surface,
            identity_residual: n_surface as f64 - 0.5 * n_torus as f64,
        })
    }

    pub fn projective_plane(t: f64) -> Result<Self> {
        let half = ModeStep::new(1, 2);
        let n_torus = count_torus_rect(half, half, t)?;
        let n_surface = count_projective_plane(t)?;
        Ok(Self {
            t,
            surface: Surface::ProjectivePlane,
            n_torus,
            n_surface,
            identity_residual: n_surface as f64 - 0.25 * n_torus as f64 - 0.25,
        })
    }

    /// `|identity_residual| ≤ 1/2`.
    pub fn in_window(&self) -> bool {
        self.identity_residual.abs() <= 0.5
    }
}

/// `#{(j, k) ∈ ℤ² : (2π)²((pj)² + (qk)²) ≤ t}`.
pub fn count_torus_rect(p: ModeStep, q: ModeStep, t: f64) -> Result<u64> {
    check_nonnegative("t", t)?;
    if *p.numer() == 0 || *q.numer() == 0 {
        return Err(Error::invalid("mode step", format!("must be positive, got {p} and {q}")));
    }
    // (pj)² + (qk)² ≤ T  ⇔  (p₁q₂ j)² + (q₁p₂ k)² ≤ (p₂q₂)² T
    let den = u128::from(*p.denom()) * u128::from(*q.denom());
    let a = (u128::from(*p.numer()) * u128::from(*q.denom())).pow(2);
    let c = (u128::from(*q.numer()) * u128::from(*p.denom())).pow(2);
    let bound = scaled_bound(t, (den * den) as f64)?;
    let rows = isqrt(bound / a);
    check_rows(rows, t)?;
    let row = |j: u128| 2 * isqrt((bound - a * j * j) / c) as u64 + 1;
    Ok(row(0) + 2 * (1..=rows).map(row).sum::<u64>())
}

/// Klein bottle eigenfunctions: `e^{πiky}` for even `k`, and one per pair
/// `±j` with `j ≥ 1` for every `k`, eigenvalue `(2π)²(j² + (k/2)²)`.
pub fn count_klein_bottle(t: f64) -> Result<u64> {
    check_nonnegative("t", t)?;
    let bound = scaled_bound(t, 4.0)?;
    let even_k = 2 * (isqrt(bound) / 2) as u64 + 1;
    let rows = isqrt(bound / 4);
    check_rows(rows, t)?;
    let paired: u64 = (1..=rows).map(|j| 2 * isqrt(bound - 4 * j * j) as u64 + 1).sum();
    Ok(even_k + paired)
}

/// Projective plane eigenfunctions with eigenvalue `(2π)²((j/2)² + (k/2)²)`:
/// the constant, `k > 0` even with `j = 0`, `j > 0` even with `k = 0`, and
/// one per `j, k > 0`.
pub fn count_projective_plane(t: f64) -> Result<u64> {
    check_nonnegative("t", t)?;
    let bound = scaled_bound(t, 4.0)?;
    let axis = (isqrt(bound) / 2) as u64;
    let mut interior = 0u64;
    let rows = isqrt(bound);
    check_rows(rows, t)?;
    for j in 1..=rows {
        interior += isqrt(bound - j * j) as u64;
    }
    Ok(1 + 2 * axis + interior)
}

/// Both identities at every grid point, Klein bottle first.
pub fn identity_residuals(t_grid: &[f64]) -> Result<Vec<SurfaceCount>> {
    let mut out = Vec::with_capacity(2 * t_grid.len());
    for &t in t_grid {
        out.push(SurfaceCount::klein_bottle(t)?);
        out.push(SurfaceCount::projective_plane(t)?);
    }
    Ok(out)
}

/// `N_{T₂,₂}(t) − N_{T₁,₁}(4t)`, zero for every `t`.
pub fn scaling_defect(t: f64) -> Result<i64> {
    let half = ModeStep::new(1, 2);
    let one = ModeStep::from_integer(1);
    let quarter_modes = count_torus_rect(half, half, t)?;
    let unit = count_torus_rect(one, one, 4.0 * t)?;
    Ok(quarter_modes as i64 - unit as i64)
}

/// `⌊scale · t/(2π)²⌋` with the shared closed-boundary slack.
fn scaled_bound(t: f64, scale: f64) -> Result<u128> {
    let v = (level(t) * scale).floor();
    if !(v < MAX_SCALED_LEVEL) {
        return Err(Error::CountOverflow { t });
    }
    Ok(v as u128)
}

fn check_rows(rows: u128, t: f64) -> Result<()> {
    if rows > MAX_ROWS {
        return Err(Error::CountOverflow { t });
    }
    Ok(())
}

/// `⌊√n⌋`
fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::count;
    use crate::EllipseForm;
    use crate::FOUR_PI_SQ;

    fn half() -> ModeStep {
        ModeStep::new(1, 2)
    }

    fn one() -> ModeStep {
        ModeStep::from_integer(1)
    }

    #[test]
    fn torus_examples() {
        assert_eq!(count_torus_rect(one(), half(), 39.5).unwrap(), 7);
        assert_eq!(count_torus_rect(half(), half(), 10.0).unwrap(), 5);
        assert_eq!(count_torus_rect(one(), one(), 0.0).unwrap(), 1);
    }

    #[test]
    fn unit_torus_is_the_disk_count() {
        let disk = EllipseForm::unit_disk();
        for t in [0.0, 39.0, FOUR_PI_SQ, 2.0 * FOUR_PI_SQ, 777.7, 25.0 * FOUR_PI_SQ, 1e5] {
            assert_eq!(count_torus_rect(one(), one(), t).unwrap(), count(&disk, t).unwrap());
        }
    }

    #[test]
    fn rectangular_torus_matches_ellipse_count() {
        // Steps (p, q) give the ellipse with semi-axis scales 1/p and 1/q.
        let f = EllipseForm::new(1.0, 2.0, 0.0).unwrap();
        let g = EllipseForm::new(3.0, 1.5, 0.0).unwrap();
        for t in [0.0, 39.5, 100.0, 4321.0, 9e4] {
            assert_eq!(count_torus_rect(one(), half(), t).unwrap(), count(&f, t).unwrap());
            let (p, q) = (ModeStep::new(1, 3), ModeStep::new(2, 3));
            assert_eq!(count_torus_rect(p, q, t).unwrap(), count(&g, t).unwrap());
        }
    }

    #[test]
    fn klein_bottle_examples() {
        assert_eq!(count_klein_bottle(0.0).unwrap(), 1);
        assert_eq!(count_klein_bottle(39.5).unwrap(), 4);
        let s = SurfaceCount::klein_bottle(39.5).unwrap();
        assert_eq!(s.identity_residual, 0.5);
    }

    #[test]
    fn projective_plane_examples() {
        assert_eq!(count_projective_plane(0.0).unwrap(), 1);
        assert_eq!(count_projective_plane(10.0).unwrap(), 1);
        let s = SurfaceCount::projective_plane(10.0).unwrap();
        assert_eq!(s.identity_residual, -0.5);
        assert_eq!(s.n_torus, 5);
    }

    /// Direct listing of the eigenfunction families.
    fn families(t: f64) -> (u64, u64) {
        let bound = (level(t) * 4.0).floor() as i64;
        let r = (bound as f64).sqrt() as i64 + 2;
        let (mut kb, mut pp) = (0, 0);
        for j in -r..=r {
            for k in -r..=r {
                let kb_member = (j == 0 && k % 2 == 0) || j >= 1;
                if kb_member && 4 * j * j + k * k <= bound {
                    kb += 1;
                }
                let pp_member = (j == 0 && k == 0)
                    || (j == 0 && k > 0 && k % 2 == 0)
                    || (k == 0 && j > 0 && j % 2 == 0)
                    || (j > 0 && k > 0);
                if pp_member && j * j + k * k <= bound {
                    pp += 1;
                }
            }
        }
        (kb, pp)
    }

    #[test]
    fn counts_match_family_listing() {
        for t in [0.0, 5.0, 19.7, 19.8, 39.5, 40.0, 123.0, 1000.0, 5555.5] {
            assert_eq!((count_klein_bottle(t).unwrap(), count_projective_plane(t).unwrap()), families(t), "t={t}");
        }
    }

    #[test]
    fn residuals_on_a_grid() {
        let grid: Vec<f64> = (0..500).map(|i| i as f64 * 37.3).collect();
        let res = identity_residuals(&grid).unwrap();
        assert_eq!(res.len(), 1000);
        assert!(res.iter().all(SurfaceCount::in_window));
        for s in res.iter().filter(|s| s.surface == Surface::KleinBottle) {
            assert!([-0.5, 0.0, 0.5].contains(&s.identity_residual));
        }
        for &t in &grid {
            assert_eq!(scaling_defect(t).unwrap(), 0);
        }
    }

    #[test]
    fn jumps_are_right_continuous() {
        // (2π)²/2 is the first projective plane eigenvalue above zero.
        let t = FOUR_PI_SQ / 2.0;
        assert_eq!(count_projective_plane(t).unwrap(), 2);
        assert_eq!(count_projective_plane(t * (1.0 - 1e-12)).unwrap(), 1);
        assert_eq!(count_klein_bottle(FOUR_PI_SQ / 4.0).unwrap(), 1);
        // k ∈ {0, ±2} and (j, k) = (1, 0)
        assert_eq!(count_klein_bottle(FOUR_PI_SQ).unwrap(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(count_klein_bottle(-1.0).is_err());
        assert!(count_projective_plane(f64::NAN).is_err());
        assert!(count_torus_rect(ModeStep::from_integer(0), one(), 1.0).is_err());
        assert!(matches!(count_klein_bottle(1e40), Err(Error::CountOverflow { .. })));
    }
}
