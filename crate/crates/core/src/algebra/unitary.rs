//! U(2) boundary-condition matrices and the group-extension maps.
//!
//! A boundary condition is a 2×2 unitary U. Two extension structures are
//! used: the semidirect split U(2) = SU(2) ⋊ U(1) with section
//! s(e^{iη}) = diag(e^{iη}, 1), and the two-to-one covering
//! SU(2) × U(1) → U(2), (M, e^{iη}) ↦ e^{iη} M.

use super::complex::{Complex, ONE};
use super::mat2::Mat2;
use crate::error::{Error, Result};

/// Frobenius tolerance on ‖U†U − I‖ accepted at construction.
pub const UNITARITY_TOL: f64 = 1e-12;

/// A 2×2 unitary matrix, validated at construction.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Unitary2 {
    m: Mat2,
}

/// det(U), tr(U) and tr(U σx); the three invariants the spectrum depends on.
#[derive(Clone, Copy, Debug)]
pub struct Traces {
    pub det: Complex,
    pub tr: Complex,
    pub tr_sx: Complex,
}

impl Unitary2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = unitarity_defect(&m);
        if !defect.is_finite() || defect > UNITARITY_TOL {
            return Err(Error::NotUnitary {
                defect,
                tol: UNITARITY_TOL,
            });
        }
        Ok(Self { m })
    }

    /// Construction without the defect check, for products of already
    /// validated unitaries (closed under multiplication up to roundoff).
    pub(crate) fn new_unchecked(m: Mat2) -> Self {
        debug_assert!(unitarity_defect(&m) < 1e-10);
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: Mat2::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn transpose(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    /// det(U) = e^{2iη}, tr(U) = 2 e^{iη} m0, tr(U σx) = 2i e^{iη} m1.
    pub fn traces(&self) -> Traces {
        Traces {
            det: self.m.det(),
            tr: self.m.trace(),
            tr_sx: self.m.e12 + self.m.e21,
        }
    }
}

impl std::ops::Mul for Unitary2 {
    type Output = Unitary2;
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        Unitary2::new_unchecked(self.m * rhs.m)
    }
}

pub fn unitarity_defect(m: &Mat2) -> f64 {
    (m.adjoint() * *m - Mat2::identity()).frobenius_norm()
}

/// Split U = M · s(e^{iη}) with det(M) = 1 and s the section
/// diag(e^{iη}, 1). Returns (M, η) with η in [0, 2π).
pub fn semidirect_split(u: &Unitary2) -> (Unitary2, f64) {
    let det = u.matrix().det();
    let mut eta = det.arg();
    if eta < 0.0 {
        eta += 2.0 * std::f64::consts::PI;
    }
    let s_inv = Mat2::diag(Complex::unit_phase(-eta), ONE);
    (Unitary2::new_unchecked(*u.matrix() * s_inv), eta)
}

/// The section U(1) → U(2) of the semidirect split.
pub fn section(eta: f64) -> Unitary2 {
    Unitary2::new_unchecked(Mat2::diag(Complex::unit_phase(eta), ONE))
}

/// Action φ_{e^{iη}} of the quotient U(1) on the SU(2) normal subgroup:
/// (a, b; c, d) ↦ (a, e^{iη}b; e^{-iη}c, d). Expects det(n) = 1.
pub fn phi_action(phase: f64, n: &Unitary2) -> Unitary2 {
    let p = Complex::unit_phase(phase);
    let m = n.matrix();
    Unitary2::new_unchecked(Mat2::new(m.e11, p * m.e12, p.conj() * m.e21, m.e22))
}

/// The covering map (M, e^{iphase}) ↦ e^{iphase} M with det(M) = 1.
/// Two-to-one: (M, η) and (−M, η + π) project to the same unitary.
pub fn cover_project(m: &Unitary2, phase: f64) -> Unitary2 {
    Unitary2::new_unchecked(m.matrix().scale(Complex::unit_phase(phase)))
}

/// Negation map on the SU(2) sheet, the nontrivial deck transformation.
pub fn negate(m: &Unitary2) -> Unitary2 {
    Unitary2::new_unchecked(-*m.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::complex::ZERO;
    use std::f64::consts::PI;

    #[test]
    fn rejects_non_unitary() {
        let m = Mat2::new(ONE, ONE, ZERO, ONE);
        assert!(matches!(
            Unitary2::new(m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn traces_identity_and_sigma_x() {
        let id = Unitary2::identity();
        let t = id.traces();
        assert!((t.det - ONE).abs() < 1e-15);
        assert!((t.tr - Complex::real(2.0)).abs() < 1e-15);
        assert!(t.tr_sx.abs() < 1e-15);

        let sx = Unitary2::new(Mat2::sigma_x()).unwrap();
        let t = sx.traces();
        // tr(sigma_x sigma_x) = tr(I) = 2
        assert!((t.det + ONE).abs() < 1e-15);
        assert!(t.tr.abs() < 1e-15);
        assert!((t.tr_sx - Complex::real(2.0)).abs() < 1e-15);
    }

    #[test]
    fn split_section_image() {
        let alpha = 1.234;
        let u = section(alpha);
        let (m, eta) = semidirect_split(&u);
        assert!((eta - alpha).abs() < 1e-14);
        assert!((*m.matrix() - Mat2::identity()).frobenius_norm() < 1e-14);

        let (m, eta) = semidirect_split(&Unitary2::identity());
        assert!(eta.abs() < 1e-15);
        assert!((*m.matrix() - Mat2::identity()).frobenius_norm() < 1e-15);
    }

    #[test]
    fn split_recomposes_sigma_x() {
        let sx = Unitary2::new(Mat2::sigma_x()).unwrap();
        let (m, eta) = semidirect_split(&sx);
        assert!((eta - PI).abs() < 1e-14);
        let recomposed = *m.matrix() * Mat2::diag(Complex::unit_phase(eta), ONE);
        assert!((recomposed - Mat2::sigma_x()).frobenius_norm() < 1e-12);
        assert!((m.matrix().det() - ONE).abs() < 1e-12);
    }

    #[test]
    fn split_is_a_bijection_on_random_input() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(0x5eed_0006);
        for _ in 0..100 {
            let u = crate::sample::random_unitary(&mut rng);
            let (m, eta) = semidirect_split(&u);
            assert!((0.0..2.0 * PI).contains(&eta));
            assert!((m.matrix().det() - ONE).abs() < 1e-12);
            let recomposed = *m.matrix() * Mat2::diag(Complex::unit_phase(eta), ONE);
            assert!((recomposed - *u.matrix()).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn section_is_homomorphism() {
        let a = 0.8;
        let b = 2.9;
        let lhs = section(a) * section(b);
        let rhs = section(a + b);
        assert!((*lhs.matrix() - *rhs.matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn phi_identity_and_half_turn() {
        // i*sigma_z is in SU(2)
        let n = Unitary2::new(Mat2::sigma_z().scale(crate::algebra::complex::I)).unwrap();
        assert!((*phi_action(0.0, &n).matrix() - *n.matrix()).frobenius_norm() < 1e-15);

        let m = Unitary2::new(Mat2::new(
            Complex::new(0.6, 0.0),
            Complex::new(0.8, 0.0),
            Complex::new(-0.8, 0.0),
            Complex::new(0.6, 0.0),
        ))
        .unwrap();
        let flipped = phi_action(PI, &m);
        assert!((flipped.matrix().e12.re + 0.8).abs() < 1e-15);
        assert!((flipped.matrix().e21.re - 0.8).abs() < 1e-15);
        assert!((flipped.matrix().det() - ONE).abs() < 1e-12);
    }

    #[test]
    fn phi_is_homomorphism_in_phase() {
        use rand::rngs::StdRng;
        use rand::SeedableRng;
        let mut rng = StdRng::seed_from_u64(0x5eed_0005);
        for _ in 0..20 {
            let m = crate::sample::random_special_unitary(&mut rng);
            let (a, b) = (0.7, -1.9);
            let lhs = phi_action(a, &phi_action(b, &m));
            let rhs = phi_action(a + b, &m);
            assert!((*lhs.matrix() - *rhs.matrix()).frobenius_norm() < 1e-13);
        }
    }

    #[test]
    fn cover_fiber() {
        let id = Unitary2::identity();
        assert!(
            (*cover_project(&id, 0.0).matrix() - Mat2::identity()).frobenius_norm() < 1e-15
        );
        let neg = negate(&id);
        assert!((*cover_project(&neg, PI).matrix() - Mat2::identity()).frobenius_norm() < 1e-15);

        // (-i sigma_x, pi/2) -> sigma_x
        let m = Unitary2::new(Mat2::sigma_x().scale(Complex::new(0.0, -1.0))).unwrap();
        assert!(
            (*cover_project(&m, PI / 2.0).matrix() - Mat2::sigma_x()).frobenius_norm() < 1e-15
        );
    }
}
