use serde::{Deserialize, Serialize};

use crate::error::{check_positive, Error, Result};
use crate::numeric::DoubleDouble;

/// An ellipse family `E_t` given by semi-axis scales and the rotation of the
/// orthonormal basis `v₁ = (cos θ, sin θ)`, `v₂ = (−sin θ, cos θ)`.
///
/// The counting form is `Q_c(n) = ((n·v₁)/a₁)² + ((n·v₂)/a₂)²` and the
/// series form is its inverse `Q_s(n) = (a₁ n·v₁)² + (a₂ n·v₂)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseForm {
    pub a1: f64,
    pub a2: f64,
    #[serde(default)]
    pub theta: f64,
}

impl Default for EllipseForm {
    fn default() -> Self {
        Self::unit_disk()
    }
}

impl EllipseForm {
    pub fn new(a1: f64, a2: f64, theta: f64) -> Result<Self> {
        let form = Self { a1, a2, theta };
        form.validate()?;
        Ok(form)
    }

    pub const fn unit_disk() -> Self {
        Self {
            a1: 1.0,
            a2: 1.0,
            theta: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("a1", self.a1)?;
        check_positive("a2", self.a2)?;
        if !self.theta.is_finite() {
            return Err(Error::invalid("theta", "must be finite"));
        }
        let c = self.counting_form();
        let s = self.series_form();
        if !(c.det() > 0.0 && c.xx > 0.0 && s.det() > 0.0 && s.xx > 0.0) {
            return Err(Error::invalid(
                "form",
                format!("not numerically positive definite: {self:?}"),
            ));
        }
        Ok(())
    }

    /// `a₁ = a₂ = 1`; the rotation is irrelevant then.
    pub fn is_unit_disk(&self) -> bool {
        self.a1 == 1.0 && self.a2 == 1.0
    }

    /// `a₁a₂`, the area factor in the Weyl term `a₁a₂t/4π`.
    pub fn area_factor(&self) -> f64 {
        self.a1 * self.a2
    }

    pub fn counting_form(&self) -> QuadraticForm {
        QuadraticForm::from_axes(1.0 / (self.a1 * self.a1), 1.0 / (self.a2 * self.a2), self.theta)
    }

    pub fn series_form(&self) -> QuadraticForm {
        QuadraticForm::from_axes(self.a1 * self.a1, self.a2 * self.a2, self.theta)
    }
}

/// Symmetry group of a form on `ℤ²` used to shrink enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// Isotropic: signed permutations of the coordinates.
    Octant,
    /// Diagonal: independent sign flips.
    Quadrant,
    /// Only `n ↦ −n`.
    HalfPlane,
}

/// `Q(n) = xx n₁² + 2 xy n₁n₂ + yy n₂²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
}

impl QuadraticForm {
    /// `λ₁ (x·v₁)² + λ₂ (x·v₂)²`. Equal eigenvalues and `θ = 0` are
    /// special-cased so the coefficients come out exact.
    pub fn from_axes(l1: f64, l2: f64, theta: f64) -> Self {
        if l1 == l2 {
            return Self { xx: l1, xy: 0.0, yy: l1 };
        }
        if theta == 0.0 {
            return Self { xx: l1, xy: 0.0, yy: l2 };
        }
        let (s, c) = theta.sin_cos();
        Self {
            xx: l1 * c * c + l2 * s * s,
            xy: (l1 - l2) * c * s,
            yy: l1 * s * s + l2 * c * c,
        }
    }

    pub fn det(&self) -> f64 {
        self.xx * self.yy - self.xy * self.xy
    }

    pub fn symmetry(&self) -> Symmetry {
        if self.xy != 0.0 {
            Symmetry::HalfPlane
        } else if self.xx == self.yy {
            Symmetry::Octant
        } else {
            Symmetry::Quadrant
        }
    }

    #[inline]
    pub fn eval(&self, n1: i64, n2: i64) -> f64 {
        let (a, b) = (n1 as f64, n2 as f64);
        self.xx * a * a + 2.0 * self.xy * a * b + self.yy * b * b
    }

    /// Double-double evaluation; each product of a coefficient with an
    /// integer monomial is exact for coordinates below `2²⁶`.
    #[inline]
    pub fn eval_dd(&self, n1: i64, n2: i64) -> DoubleDouble {
        let mut v = DoubleDouble::from_prod(self.xx, (n1 * n1) as f64)
            .add(DoubleDouble::from_prod(self.yy, (n2 * n2) as f64));
        if self.xy != 0.0 {
            v = v.add(DoubleDouble::from_prod(2.0 * self.xy, (n1 * n2) as f64));
        }
        v
    }

    /// Largest `|n₁|` on the ellipse `Q ≤ level`, `sqrt(level · yy / det)`.
    pub fn row_extent(&self, level: f64) -> f64 {
        (level * self.yy / self.det()).max(0.0).sqrt()
    }

    /// Largest `|n₂|` on the ellipse `Q ≤ level`.
    pub fn column_extent(&self, level: f64) -> f64 {
        (level * self.xx / self.det()).max(0.0).sqrt()
    }

    /// Real column interval `center ± half` where `Q(n₁, ·) ≤ level`.
    #[inline]
    pub(crate) fn row_span(&self, n1: i64, level: f64) -> (f64, f64) {
        let a = n1 as f64;
        let center = -self.xy * a / self.yy;
        let disc = self.yy * level - self.det() * a * a;
        (center, disc.max(0.0).sqrt() / self.yy)
    }

    /// `p/q` with `q <= max_den` rounding to exactly the coefficients, if any.
    pub(crate) fn rational_diagonal(&self, max_den: u64) -> Option<[(u64, u64); 2]> {
        if self.xy != 0.0 {
            return None;
        }
        Some([small_rational(self.xx, max_den)?, small_rational(self.yy, max_den)?])
    }
}

/// Continued-fraction search for `p/q` with `fl(p/q) == v`.
pub(crate) fn small_rational(v: f64, max_den: u64) -> Option<(u64, u64)> {
    if !(v.is_finite() && v > 0.0) {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e15 {
            break;
        }
        let a = a as u64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        if p2 as f64 / q2 as f64 == v {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a as f64;
        if frac <= 0.0 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_are_mutually_inverse() {
        let f = EllipseForm::new(2.0, 0.5, 0.4).unwrap();
        let c = f.counting_form();
        let s = f.series_form();
        // C·S = I
        let m11 = c.xx * s.xx + c.xy * s.xy;
        let m12 = c.xx * s.xy + c.xy * s.yy;
        let m22 = c.xy * s.xy + c.yy * s.yy;
        assert!((m11 - 1.0).abs() < 1e-14);
        assert!(m12.abs() < 1e-14);
        assert!((m22 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unit_disk_is_exact_for_any_rotation() {
        for theta in [0.0, 0.3, 1.0, 2.5] {
            let c = EllipseForm::new(1.0, 1.0, theta).unwrap().counting_form();
            assert_eq!(c, QuadraticForm { xx: 1.0, xy: 0.0, yy: 1.0 });
            assert_eq!(c.symmetry(), Symmetry::Octant);
        }
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(EllipseForm::new(0.0, 1.0, 0.0).is_err());
        assert!(EllipseForm::new(1.0, -2.0, 0.0).is_err());
        assert!(EllipseForm::new(1.0, 2.0, f64::NAN).is_err());
        assert!(EllipseForm::new(f64::INFINITY, 2.0, 0.0).is_err());
    }

    #[test]
    fn finds_small_rationals() {
        assert_eq!(small_rational(0.25, 1 << 20), Some((1, 4)));
        assert_eq!(small_rational(1.0 / 9.0, 1 << 20), Some((1, 9)));
        assert_eq!(small_rational(4.0, 1 << 20), Some((4, 1)));
        assert_eq!(small_rational(std::f64::consts::PI, 1 << 20), None);
    }

    #[test]
    fn json_shape() {
        let f: EllipseForm = serde_json::from_str(r#"{"a1": 2.0, "a2": 0.5, "theta": 0.1}"#).unwrap();
        assert_eq!(f, EllipseForm { a1: 2.0, a2: 0.5, theta: 0.1 });
        let back: EllipseForm = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
