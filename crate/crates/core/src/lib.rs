//! Lattice points in disks and ellipses, the Weyl remainder of flat tori and
//! its running averages.
//!
//! The crate computes the average `A(R) = (1/R) ∫₀ᴿ D(t) dt` of the remainder
//! `D(t) = N(t) − a₁a₂t/4π` along three independent routes:
//!
//! * [`averaging::average_exact`] integrates the step function `N(t)` exactly
//!   from its jump points ([`lattice::spectrum_shells`]);
//! * [`series::average_bessel`] sums the lattice series of `J₂` terms;
//! * [`series::asymptotic_average`] uses the almost periodic functions
//!   [`series::g1`] and [`series::g2`].
//!
//! [`surfaces`] counts eigenvalues of the Klein bottle and projective plane
//! and checks their relation to rectangular torus counts.

pub mod averaging;
pub mod bessel;
mod error;
pub mod lattice;
pub mod numeric;
pub mod series;
pub mod surfaces;

pub use error::{Error, Result};
pub use lattice::{Budget, EllipseForm, SpectrumShells};
pub use series::SeriesControl;

/// `(2π)²`, the scale between lattice form values and eigenvalues.
pub const FOUR_PI_SQ: f64 = (2.0 * std::f64::consts::PI) * (2.0 * std::f64::consts::PI);
