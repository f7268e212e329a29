//! Dense 2×2 complex matrices.

use std::ops::{Add, Mul, Neg, Sub};

use super::complex::{self, Complex};

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Mat2 {
    pub e11: Complex,
    pub e12: Complex,
    pub e21: Complex,
    pub e22: Complex,
}

impl Mat2 {
    pub const fn new(e11: Complex, e12: Complex, e21: Complex, e22: Complex) -> Self {
        Self { e11, e12, e21, e22 }
    }

    pub const fn zero() -> Self {
        Self::new(complex::ZERO, complex::ZERO, complex::ZERO, complex::ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(complex::ONE, complex::ZERO, complex::ZERO, complex::ONE)
    }

    pub const fn sigma_x() -> Self {
        Self::new(complex::ZERO, complex::ONE, complex::ONE, complex::ZERO)
    }

    pub const fn sigma_y() -> Self {
        Self::new(
            complex::ZERO,
            Complex { re: 0.0, im: -1.0 },
            complex::I,
            complex::ZERO,
        )
    }

    pub const fn sigma_z() -> Self {
        Self::new(
            complex::ONE,
            complex::ZERO,
            complex::ZERO,
            Complex { re: -1.0, im: 0.0 },
        )
    }

    pub fn diag(a: Complex, b: Complex) -> Self {
        Self::new(a, complex::ZERO, complex::ZERO, b)
    }

    pub fn det(&self) -> Complex {
        self.e11 * self.e22 - self.e12 * self.e21
    }

    pub fn trace(&self) -> Complex {
        self.e11 + self.e22
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.e11, self.e21, self.e12, self.e22)
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.e11.conj(),
            self.e12.conj(),
            self.e21.conj(),
            self.e22.conj(),
        )
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e11.conj(),
            self.e21.conj(),
            self.e12.conj(),
            self.e22.conj(),
        )
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self::new(self.e11 * s, self.e12 * s, self.e21 * s, self.e22 * s)
    }

    /// Inverse via the adjugate; returns None when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.abs() == 0.0 {
            return None;
        }
        Some(Self::new(
            self.e22 / d,
            -self.e12 / d,
            -self.e21 / d,
            self.e11 / d,
        ))
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.e11.norm_sqr() + self.e12.norm_sqr() + self.e21.norm_sqr() + self.e22.norm_sqr())
            .sqrt()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: (Complex, Complex)) -> (Complex, Complex) {
        (
            self.e11 * v.0 + self.e12 * v.1,
            self.e21 * v.0 + self.e22 * v.1,
        )
    }

    /// Smallest singular value, from the eigenvalues of M†M.
    pub fn smallest_singular_value(&self) -> f64 {
        let g = self.adjoint() * *self;
        // g is Hermitian PSD: eigenvalues from trace/determinant.
        let t = g.trace().re;
        let d = g.det().re.max(0.0);
        let disc = (t * t / 4.0 - d).max(0.0).sqrt();
        (t / 2.0 - disc).max(0.0).sqrt()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e11 + rhs.e11,
            self.e12 + rhs.e12,
            self.e21 + rhs.e21,
            self.e22 + rhs.e22,
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e11 - rhs.e11,
            self.e12 - rhs.e12,
            self.e21 - rhs.e21,
            self.e22 - rhs.e22,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e11 * rhs.e11 + self.e12 * rhs.e21,
            self.e11 * rhs.e12 + self.e12 * rhs.e22,
            self.e21 * rhs.e11 + self.e22 * rhs.e21,
            self.e21 * rhs.e12 + self.e22 * rhs.e22,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.e11, -self.e12, -self.e21, -self.e22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let sx = Mat2::sigma_x();
        let sy = Mat2::sigma_y();
        let sz = Mat2::sigma_z();
        assert_eq!(sx * sx, Mat2::identity());
        // sigma_x sigma_y = i sigma_z
        let prod = sx * sy;
        assert!((prod - sz.scale(complex::I)).frobenius_norm() < 1e-15);
        assert!((sx.det().re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat2::new(
            Complex::new(1.0, 2.0),
            Complex::new(-0.5, 0.3),
            Complex::new(0.0, 1.1),
            Complex::new(2.0, -0.7),
        );
        let inv = m.inverse().unwrap();
        assert!((m * inv - Mat2::identity()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn singular_values() {
        let m = Mat2::diag(Complex::real(3.0), Complex::real(0.25));
        assert!((m.smallest_singular_value() - 0.25).abs() < 1e-12);
        let sing = Mat2::new(
            complex::ONE,
            complex::ONE,
            complex::ONE,
            complex::ONE,
        );
        assert!(sing.smallest_singular_value() < 1e-12);
    }
}
