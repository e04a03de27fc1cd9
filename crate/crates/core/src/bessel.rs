//! Bessel functions `J₀`, `J₁`, `J₂` of a real nonnegative argument.
//!
//! Two regimes: the ascending power series below `series_cutoff`, and the
//! Hankel asymptotic expansion
//!
//! ```text
//! J_ν(x) = sqrt(2/(πx)) [P_ν(x) cos χ − Q_ν(x) sin χ],   χ = x − νπ/2 − π/4
//! ```
//!
//! above it, summed until the terms drop below `1e-17` or start to grow.
//! In the asymptotic regime `J₂` comes from the three-term recurrence.
//! With the default cutoff of 12 both regimes are accurate to about `1e-12`
//! at the seam and the asymptotic error falls off quickly beyond it.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{check_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    Zero,
    One,
    Two,
}

impl BesselOrder {
    pub fn as_u32(self) -> u32 {
        match self {
            BesselOrder::Zero => 0,
            BesselOrder::One => 1,
            BesselOrder::Two => 2,
        }
    }
}

impl TryFrom<u32> for BesselOrder {
    type Error = Error;

    fn try_from(order: u32) -> Result<Self> {
        match order {
            0 => Ok(BesselOrder::Zero),
            1 => Ok(BesselOrder::One),
            2 => Ok(BesselOrder::Two),
            _ => Err(Error::invalid("order", format!("must be 0, 1 or 2, got {order}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselRegimeConfig {
    /// Arguments below this use the power series.
    pub series_cutoff: f64,
    /// Upper limit on Hankel expansion terms.
    pub asymptotic_terms: usize,
    pub target_abs_error: f64,
}

impl Default for BesselRegimeConfig {
    fn default() -> Self {
        Self {
            series_cutoff: 12.0,
            asymptotic_terms: 40,
            target_abs_error: 1e-10,
        }
    }
}

impl BesselRegimeConfig {
    pub fn validate(&self) -> Result<()> {
        check_positive("series_cutoff", self.series_cutoff)?;
        check_positive("target_abs_error", self.target_abs_error)?;
        if self.asymptotic_terms == 0 {
            return Err(Error::invalid("asymptotic_terms", "must be >= 1"));
        }
        Ok(())
    }

    pub fn eval(&self, order: BesselOrder, x: f64) -> Result<f64> {
        self.validate()?;
        check_argument(x)?;
        Ok(self.eval_unchecked(order, x))
    }

    fn eval_unchecked(&self, order: BesselOrder, x: f64) -> f64 {
        if x < self.series_cutoff {
            return power_series(order.as_u32(), x);
        }
        match order {
            BesselOrder::Zero => hankel(0, x, self.asymptotic_terms),
            BesselOrder::One => hankel(1, x, self.asymptotic_terms),
            BesselOrder::Two => {
                let j0 = hankel(0, x, self.asymptotic_terms);
                let j1 = hankel(1, x, self.asymptotic_terms);
                2.0 / x * j1 - j0
            }
        }
    }
}

fn check_argument(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::invalid("x", format!("must be finite, got {x}")));
    }
    if x < 0.0 {
        return Err(Error::invalid("x", format!("must be >= 0, got {x}")));
    }
    Ok(x)
}

/// `J_order(x)` with the default regime configuration.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    check_argument(x)?;
    Ok(BesselRegimeConfig::default().eval_unchecked(order, x))
}

/// Unchecked `J₂` for hot loops; `x` must be finite and nonnegative.
#[inline]
pub fn j2(x: f64) -> f64 {
    debug_assert!(x.is_finite() && x >= 0.0);
    const DEFAULT: BesselRegimeConfig = BesselRegimeConfig {
        series_cutoff: 12.0,
        asymptotic_terms: 40,
        target_abs_error: 1e-10,
    };
    DEFAULT.eval_unchecked(BesselOrder::Two, x)
}

/// `Σ_k (−1)^k (x/2)^{2k+n} / (k! (k+n)!)`
fn power_series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = 1.0;
    for i in 1..=n {
        term *= half / f64::from(i);
    }
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * (k + f64::from(n)));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) || term == 0.0 {
            break;
        }
    }
    sum
}

/// Hankel expansion for integer order `nu` at large `x`.
fn hankel(nu: u32, x: f64, max_terms: usize) -> f64 {
    let mu = 4.0 * f64::from(nu * nu);
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a: f64 = 1.0;
    for k in 1..=max_terms {
        let odd = (2 * k - 1) as f64;
        let next = a * (mu - odd * odd) / (k as f64 * eight_x);
        if next.abs() > a.abs() {
            break;
        }
        a = next;
        // P takes the even terms, Q the odd ones, each with sign (−1)^{k/2}.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let phase = (f64::from(nu) * 0.5 + 0.25) * PI;
    let (s, c) = shifted_sin_cos(x, phase);
    (2.0 / (PI * x)).sqrt() * (p * c - q * s)
}

/// `(sin(x − φ), cos(x − φ))` via angle addition, so the large argument `x`
/// is reduced by the platform's exact range reduction and never rounded
/// against `φ`.
#[inline]
fn shifted_sin_cos(x: f64, phase: f64) -> (f64, f64) {
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    (sx * cp - cx * sp, cx * cp + sx * sp)
}

/// Leading term `−sqrt(2/π) x^{−1/2} cos(x − π/4)` of `J₂`.
pub fn j2_asymptotic_leading(x: f64) -> Result<f64> {
    check_positive("x", x)?;
    let (_, c) = shifted_sin_cos(x, FRAC_PI_4);
    Ok(-(2.0 / PI).sqrt() * x.powf(-0.5) * c)
}

/// Leading term `sqrt(2/π) x^{−1/2} cos(x − απ/2 − π/4)` of `J_α`.
pub fn jalpha_asymptotic_leading(order: BesselOrder, x: f64) -> Result<f64> {
    check_positive("x", x)?;
    let phase = f64::from(order.as_u32()) * 0.5 * PI + FRAC_PI_4;
    let (_, c) = shifted_sin_cos(x, phase);
    Ok((2.0 / PI).sqrt() * x.powf(-0.5) * c)
}
