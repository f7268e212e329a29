//! Canonical parametrization of U(2) boundary conditions.
//!
//! Every U is written as e^{iη} (m0 I + i m·σ) with (m0, m) on the unit
//! 3-sphere. The covering (M, e^{iη}) ↦ e^{iη}M is two-to-one, so η is
//! restricted to [0, π) to pick a unique representative: the raw
//! presentations (M, η) and (−M, η + π) describe the same matrix.

use std::f64::consts::PI;

use super::complex::Complex;
use super::mat2::Mat2;
use super::unitary::Unitary2;
use crate::error::{Error, Result};

/// Tolerance on the S³ constraint m0² + |m|² = 1.
pub const S3_TOL: f64 = 1e-12;

/// Canonical boundary-condition parameters (η, m0, m1, m2, m3).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct BoundaryParams {
    pub eta: f64,
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl BoundaryParams {
    pub fn new(eta: f64, m0: f64, m1: f64, m2: f64, m3: f64) -> Result<Self> {
        if !(eta.is_finite() && (0.0..PI).contains(&eta)) {
            return Err(Error::InvalidParameter(format!(
                "eta = {eta} outside the canonical range [0, pi)"
            )));
        }
        let norm = m0 * m0 + m1 * m1 + m2 * m2 + m3 * m3;
        if !norm.is_finite() || (norm - 1.0).abs() > S3_TOL {
            return Err(Error::InvalidParameter(format!(
                "(m0, m1, m2, m3) violates the S3 constraint: |m|^2 - 1 = {:e}",
                norm - 1.0
            )));
        }
        Ok(Self { eta, m0, m1, m2, m3 })
    }

    /// The SU(2) factor m0 I + i m·σ.
    pub fn su2_matrix(&self) -> Mat2 {
        Mat2::new(
            Complex::new(self.m0, self.m3),
            Complex::new(self.m2, self.m1),
            Complex::new(-self.m2, self.m1),
            Complex::new(self.m0, -self.m3),
        )
    }
}

/// Build U = e^{iη} (m0 I + i m·σ).
pub fn from_params(p: &BoundaryParams) -> Unitary2 {
    Unitary2::new_unchecked(p.su2_matrix().scale(Complex::unit_phase(p.eta)))
}

/// Recover the unique canonical parameters of a unitary.
///
/// η = arg(det U)/2 folded into [0, π); the SU(2) part is then read off
/// e^{-iη} U. Round-trips with [`from_params`] to machine precision.
pub fn to_params(u: &Unitary2) -> BoundaryParams {
    let det = u.matrix().det();
    let mut eta = det.arg() / 2.0;
    if eta < 0.0 {
        eta += PI;
    }
    if eta == 0.0 {
        eta = 0.0; // fold −0.0
    }
    // eta now in [0, pi); e^{-i eta} U has det 1 on either fold.
    let m = u.matrix().scale(Complex::unit_phase(-eta));
    BoundaryParams {
        eta,
        m0: 0.5 * (m.e11.re + m.e22.re),
        m1: 0.5 * (m.e12.im + m.e21.im),
        m2: 0.5 * (m.e12.re - m.e21.re),
        m3: 0.5 * (m.e11.im - m.e22.im),
    }
}

impl Unitary2 {
    pub fn from_params(p: &BoundaryParams) -> Unitary2 {
        from_params(p)
    }

    pub fn to_params(&self) -> BoundaryParams {
        to_params(self)
    }
}
