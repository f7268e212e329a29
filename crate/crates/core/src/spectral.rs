//! Dimensionless spectral-function machinery.
//!
//! Everything here works in units ℓ = 1 and ε̂ = εℓ², with the scale
//! length ℓ0 of the boundary form fixed to ℓ. The eigenvalue problem
//! ψ'' + ε̂ψ = 0 on [−1/2, 1/2] with boundary condition
//! (I − U)Ψ = i(I + U)Ψ' has spectrum given by the zero set of
//! F_U(ε̂) = det[B(ε̂) − U], where B = A₋A₊⁻¹ reduces to aI + bσx.
//!
//! The closed forms used here (and cross-checked against direct
//! A₋A₊⁻¹ products and an independent Runge-Kutta integration in the
//! oracle module) are, with x = kℓ and D = (1+x²)sin x + 2ix cos x:
//!
//!   a = (1−x²)sin x / D,   b = 2ix / D,   c = det B = a² − b².
//!
//! The real secular function used for root bracketing is
//! Re[e^{−iη} D F_U] on the positive branch and Im[...] on the negative
//! branch; D vanishes only at ε̂ = 0, which is decided separately by the
//! zero-mode condition cos η − 2 sin η = m0 + 2m1.

use crate::algebra::{Complex, Mat2, Unitary2};
use crate::error::{Error, Result};
use crate::symmetry::SpectralClass;

/// Default tolerance on the zero-mode condition residual.
pub const ZERO_MODE_TOL: f64 = 1e-10;

/// Spectral branch of an energy or eigenvalue.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    Positive,
    Zero,
    Negative,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Positive => write!(f, "positive"),
            Branch::Zero => write!(f, "zero"),
            Branch::Negative => write!(f, "negative"),
        }
    }
}

/// Dimensionless energy ε̂ = 2mEℓ²/ħ².
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DimlessEnergy(f64);

impl DimlessEnergy {
    pub fn new(eps_hat: f64) -> Self {
        assert!(eps_hat.is_finite(), "non-finite energy {eps_hat}");
        Self(eps_hat)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn branch(self) -> Branch {
        if self.0 > 0.0 {
            Branch::Positive
        } else if self.0 < 0.0 {
            Branch::Negative
        } else {
            Branch::Zero
        }
    }
}

/// Dimensionless wave number x = kℓ: real for ε̂ ≥ 0, positive-imaginary
/// for ε̂ < 0.
#[derive(Clone, Copy, Debug)]
pub struct WaveNumber {
    pub x: Complex,
}

pub fn wave_number(e: DimlessEnergy) -> WaveNumber {
    let eps = e.value();
    let x = if eps >= 0.0 {
        Complex::new(eps.sqrt(), 0.0)
    } else {
        Complex::new(0.0, (-eps).sqrt())
    };
    WaveNumber { x }
}

/// Which solution basis a pair of boundary matrices was built in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolutionBasis {
    /// {e^{ikx}, e^{−ikx}} for ε̂ ≠ 0.
    Exponential,
    /// The affine zero-mode basis at ε̂ = 0.
    Affine,
}

/// The boundary-data matrices A±(ε̂) mapping solution coefficients to Ψ±.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryMatrices {
    pub a_plus: Mat2,
    pub a_minus: Mat2,
    pub basis: SolutionBasis,
}

pub(crate) fn exp_c(z: Complex) -> Complex {
    Complex::unit_phase(z.im).scale(z.re.exp())
}

/// A±(ε̂) by direct substitution of the solution basis into Ψ ± iΨ'.
///
/// For ε̂ ≠ 0 the entries are (1±x)e^{−ix/2} on the diagonal and
/// (1∓x)e^{+ix/2} off it, with the rows ordered (left endpoint, right
/// endpoint). For ε̂ = 0 the invertible affine-basis matrices are used.
pub fn boundary_matrices(e: DimlessEnergy) -> BoundaryMatrices {
    if e.value() == 0.0 {
        // A±(0) = (1, 1/2 ± i; 1, −1/2 ∓ i)
        let one = Complex::real(1.0);
        let a_plus = Mat2::new(
            one,
            Complex::new(0.5, 1.0),
            one,
            Complex::new(-0.5, -1.0),
        );
        let a_minus = Mat2::new(
            one,
            Complex::new(0.5, -1.0),
            one,
            Complex::new(-0.5, 1.0),
        );
        return BoundaryMatrices {
            a_plus,
            a_minus,
            basis: SolutionBasis::Affine,
        };
    }
    let x = wave_number(e).x;
    let one = Complex::real(1.0);
    let e_minus = exp_c(Complex::new(0.0, -0.5) * x); // e^{−ix/2}
    let e_plus = exp_c(Complex::new(0.0, 0.5) * x); // e^{+ix/2}
    let plus_diag = (one + x) * e_minus;
    let plus_off = (one - x) * e_plus;
    let minus_diag = (one - x) * e_minus;
    let minus_off = (one + x) * e_plus;
    BoundaryMatrices {
        a_plus: Mat2::new(plus_diag, plus_off, plus_off, plus_diag),
        a_minus: Mat2::new(minus_diag, minus_off, minus_off, minus_diag),
        basis: SolutionBasis::Exponential,
    }
}

/// The coefficients a, b, c of B = aI + bσx and c = det B, together with
/// the common denominator.
///
/// On the negative branch the denominator (and the numerators with it)
/// carries a uniform e^{−κ} rescaling so that deep bound-state energies
/// do not overflow; the ratios a, b, c are unaffected. At ε̂ = 0 the
/// denominator vanishes and the finite limits of a, b, c are returned.
#[derive(Clone, Copy, Debug)]
pub struct SpectralCoeffs {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub denom: Complex,
}

pub fn coeffs(e: DimlessEnergy) -> SpectralCoeffs {
    let eps = e.value();
    if eps > 0.0 {
        let x = eps.sqrt();
        let (sin, cos) = x.sin_cos();
        let denom = Complex::new((1.0 + x * x) * sin, 2.0 * x * cos);
        SpectralCoeffs {
            a: Complex::real((1.0 - x * x) * sin) / denom,
            b: Complex::new(0.0, 2.0 * x) / denom,
            c: denom.conj() / denom,
            denom,
        }
    } else if eps < 0.0 {
        let kappa = (-eps).sqrt();
        // e^{−κ}-scaled hyperbolics: sh = e^{−κ} sinh κ, ch = e^{−κ} cosh κ.
        let sh = -0.5 * (-2.0 * kappa).exp_m1();
        let ch = 0.5 * (1.0 + (-2.0 * kappa).exp());
        let denom = Complex::new(-2.0 * kappa * ch, (1.0 - kappa * kappa) * sh);
        SpectralCoeffs {
            a: Complex::new(0.0, (1.0 + kappa * kappa) * sh) / denom,
            b: Complex::real(-2.0 * kappa * (-kappa).exp()) / denom,
            c: Complex::new(2.0 * kappa * ch, (1.0 - kappa * kappa) * sh) / denom,
            denom,
        }
    } else {
        // Limits at ε̂ = 0: a → 1/(1+2i), b → 2i/(1+2i), c → (1−2i)/(1+2i).
        SpectralCoeffs {
            a: Complex::new(0.2, -0.4),
            b: Complex::new(0.8, 0.4),
            c: Complex::new(-0.6, -0.8),
            denom: Complex::real(0.0),
        }
    }
}

/// B(ε̂) = a(ε̂) I + b(ε̂) σx, continuous across ε̂ = 0.
pub fn b_matrix(e: DimlessEnergy) -> Mat2 {
    let SpectralCoeffs { a, b, .. } = coeffs(e);
    Mat2::new(a, b, b, a)
}

/// The spectral function F_U(ε̂) = det(U) − a tr(U) + b tr(Uσx) + c,
/// evaluated from the reduced parameters (η, m0, m1) of U.
pub fn spectral_function(u: &Unitary2, e: DimlessEnergy) -> Complex {
    spectral_function_class(&SpectralClass::of(u), e)
}

/// Same as [`spectral_function`], but from a precomputed class; the value
/// depends on U only through (η, m0, m1).
pub fn spectral_function_class(class: &SpectralClass, e: DimlessEnergy) -> Complex {
    let SpectralCoeffs { a, b, c, .. } = coeffs(e);
    let phase = Complex::unit_phase(class.eta);
    phase * phase - a * phase.scale(2.0 * class.m0)
        + Complex::new(0.0, 2.0 * class.m1) * phase * b
        + c
}

/// F_U via det[B − U]; the expansion above must agree with this route.
pub fn spectral_function_direct(u: &Unitary2, e: DimlessEnergy) -> Complex {
    (b_matrix(e) - *u.matrix()).det()
}

/// The alternative spectral function F̃_U(ε̂) = det[A₋ − U A₊].
///
/// Shares its zero set with F_U away from ε̂ = 0 but is discontinuous
/// there, so zero energy is rejected.
pub fn spectral_function_alt(u: &Unitary2, e: DimlessEnergy) -> Result<Complex> {
    if e.value() == 0.0 {
        return Err(Error::ZeroEnergy {
            op: "spectral_function_alt",
        });
    }
    let bm = boundary_matrices(e);
    Ok((bm.a_minus - *u.matrix() * bm.a_plus).det())
}

/// det M + det N + tr(MN) − tr(M)tr(N), equal to det(M − N) for any pair
/// of 2×2 matrices.
pub fn det_identity(m: &Mat2, n: &Mat2) -> Complex {
    m.det() + n.det() + (*m * *n).trace() - m.trace() * n.trace()
}

/// True when H_U admits a zero mode: cos η − 2 sin η = m0 + 2m1 within
/// [`ZERO_MODE_TOL`].
pub fn zero_mode_condition(u: &Unitary2) -> bool {
    SpectralClass::of(u).zero_mode_residual().abs() < ZERO_MODE_TOL
}

/// Real secular function e^{−iη} D(ε̂) F_U(ε̂): realness of this rescaling
/// is what licenses sign-change bracketing.
///
/// For ε̂ > 0 (x = √ε̂):
///   2[cos η (1+x²) sin x − 2 sin η x cos x] − 2m0(1−x²) sin x − 4m1 x,
/// and for ε̂ < 0 (κ = √|ε̂|):
///   2[cos η (1−κ²) sinh κ − 2 sin η κ cosh κ] − 2m0(1+κ²) sinh κ − 4m1 κ.
///
/// ε̂ = 0 is rejected: D(0) = 0, and existence of a zero mode is governed
/// by [`zero_mode_condition`].
pub fn secular(u: &Unitary2, e: DimlessEnergy) -> Result<f64> {
    let class = SpectralClass::of(u);
    let eval = SecularEval::new(&class);
    match e.branch() {
        Branch::Zero => Err(Error::ZeroEnergy { op: "secular" }),
        Branch::Positive => Ok(eval.positive(e.value().sqrt())),
        Branch::Negative => Ok(eval.negative_unscaled((-e.value()).sqrt())),
    }
}

/// Precomputed secular-function evaluator for one spectral class.
#[derive(Clone, Copy, Debug)]
pub struct SecularEval {
    ce: f64,
    se: f64,
    m0: f64,
    m1: f64,
}

impl SecularEval {
    pub fn new(class: &SpectralClass) -> Self {
        Self {
            ce: class.eta.cos(),
            se: class.eta.sin(),
            m0: class.m0,
            m1: class.m1,
        }
    }

    /// Secular function at x = √ε̂ on the positive branch.
    pub fn positive(&self, x: f64) -> f64 {
        let (sin, cos) = x.sin_cos();
        2.0 * (self.ce * (1.0 + x * x) * sin - 2.0 * self.se * x * cos)
            - 2.0 * self.m0 * (1.0 - x * x) * sin
            - 4.0 * self.m1 * x
    }

    pub fn positive_deriv(&self, x: f64) -> f64 {
        let (sin, cos) = x.sin_cos();
        2.0 * self.ce * (2.0 * x * sin + (1.0 + x * x) * cos)
            - 4.0 * self.se * (cos - x * sin)
            - 2.0 * self.m0 * (-2.0 * x * sin + (1.0 - x * x) * cos)
            - 4.0 * self.m1
    }

    /// Secular function at κ = √|ε̂|, rescaled by e^{−κ}; same sign and
    /// zeros as the unscaled form, stable for arbitrarily deep κ.
    pub fn negative_scaled(&self, kappa: f64) -> f64 {
        let q = (-2.0 * kappa).exp();
        let sh = -0.5 * (-2.0 * kappa).exp_m1();
        let ch = 0.5 * (1.0 + q);
        let ek = (-kappa).exp();
        2.0 * (self.ce * (1.0 - kappa * kappa) * sh - 2.0 * self.se * kappa * ch)
            - 2.0 * self.m0 * (1.0 + kappa * kappa) * sh
            - 4.0 * self.m1 * kappa * ek
    }

    pub fn negative_scaled_deriv(&self, kappa: f64) -> f64 {
        let q = (-2.0 * kappa).exp();
        let sh = -0.5 * (-2.0 * kappa).exp_m1();
        let ch = 0.5 * (1.0 + q);
        let ek = (-kappa).exp();
        2.0 * self.ce * (-2.0 * kappa * sh + (1.0 - kappa * kappa) * q)
            - 4.0 * self.se * (ch - kappa * q)
            - 2.0 * self.m0 * (2.0 * kappa * sh + (1.0 + kappa * kappa) * q)
            - 4.0 * self.m1 * ek * (1.0 - kappa)
    }

    /// Literal (unscaled) negative-branch form; overflows near κ ≈ 700.
    pub fn negative_unscaled(&self, kappa: f64) -> f64 {
        let sh = kappa.sinh();
        let ch = kappa.cosh();
        2.0 * (self.ce * (1.0 - kappa * kappa) * sh - 2.0 * self.se * kappa * ch)
            - 2.0 * self.m0 * (1.0 + kappa * kappa) * sh
            - 4.0 * self.m1 * kappa
    }

    /// Magnitude envelope used to normalize tangency thresholds.
    pub fn envelope(&self, t: f64) -> f64 {
        4.0 * (1.0 + t * t) + 8.0 * t + 4.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use crate::algebra::{to_params, Mat2};
    use crate::presets;
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn de(v: f64) -> DimlessEnergy {
        DimlessEnergy::new(v)
    }

    #[test]
    fn wave_number_branches() {
        assert!(wave_number(de(0.0)).x.abs() < 1e-15);
        assert!((wave_number(de(PI * PI)).x - Complex::real(PI)).abs() < 1e-15);
        let x = wave_number(de(-4.0)).x;
        assert!(x.re.abs() < 1e-15 && (x.im - 2.0).abs() < 1e-15);
    }

    #[test]
    fn affine_boundary_matrices() {
        let bm = boundary_matrices(de(0.0));
        assert_eq!(bm.basis, SolutionBasis::Affine);
        assert!((bm.a_plus.e12 - Complex::new(0.5, 1.0)).abs() < 1e-15);
        assert!((bm.a_plus.e22 - Complex::new(-0.5, -1.0)).abs() < 1e-15);
        assert!((bm.a_minus.e12 - Complex::new(0.5, -1.0)).abs() < 1e-15);
        assert!((bm.a_minus.e22 - Complex::new(-0.5, 1.0)).abs() < 1e-15);
        // |det A+(0)| = |−1−2i| = √5, the invertibility that motivates the basis
        assert!((bm.a_plus.det().abs() - 5.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn exponential_boundary_matrices_at_pi() {
        // x = π: diagonal (1±π)e^{−iπ/2} = ∓... = −i(1±π), off-diagonal i(1∓π)
        let bm = boundary_matrices(de(PI * PI));
        assert_eq!(bm.basis, SolutionBasis::Exponential);
        assert!((bm.a_plus.e11 - Complex::new(0.0, -(1.0 + PI))).abs() < 1e-13);
        assert!((bm.a_plus.e12 - Complex::new(0.0, 1.0 - PI)).abs() < 1e-13);
        assert!((bm.a_minus.e11 - Complex::new(0.0, -(1.0 - PI))).abs() < 1e-13);
        assert!((bm.a_minus.e12 - Complex::new(0.0, 1.0 + PI)).abs() < 1e-13);
    }

    #[test]
    fn b_matrix_fixed_points() {
        let b0 = b_matrix(de(0.0));
        // B(0) = (1/(1+2i)) (1, 2i; 2i, 1)
        let denom = Complex::new(1.0, 2.0);
        assert!((b0.e11 - Complex::real(1.0) / denom).abs() < 1e-15);
        assert!((b0.e12 - Complex::new(0.0, 2.0) / denom).abs() < 1e-15);
        assert!((b0.e12 - b0.e21).abs() < 1e-16);

        // continuity from both sides
        for eps in [1e-8, -1e-8] {
            assert!((b_matrix(de(eps)) - b0).frobenius_norm() < 1e-4);
        }

        // B(π²) = −σx
        let b = b_matrix(de(PI * PI));
        assert!((b - (-Mat2::sigma_x())).frobenius_norm() < 1e-14);
    }

    #[test]
    fn b_matrix_agrees_with_direct_product() {
        for &eps in &[
            1e-6, 1e-3, 0.5, 1.0, 2.0, 9.0, 50.0, 1e3, 1e4, -1e-6, -1e-3, -0.5, -2.0, -50.0,
            -1e3, -1e4,
        ] {
            let bm = boundary_matrices(de(eps));
            let direct = bm.a_minus * bm.a_plus.inverse().expect("A+ invertible off 0");
            let closed = b_matrix(de(eps));
            let scale = 1.0 + closed.frobenius_norm();
            assert!(
                (direct - closed).frobenius_norm() < 1e-10 * scale,
                "mismatch at eps = {eps:e}: {:e}",
                (direct - closed).frobenius_norm()
            );
        }
    }

    #[test]
    fn coeffs_fixed_points_and_identity() {
        let c0 = coeffs(de(0.0));
        assert!((c0.a - Complex::new(0.2, -0.4)).abs() < 1e-15);
        assert!((c0.b - Complex::new(0.8, 0.4)).abs() < 1e-15);
        assert!((c0.c - Complex::new(-0.6, -0.8)).abs() < 1e-15);

        // x = π: a = 0, b = −1, and the identity det B = a² − b² forces c = −1
        let cp = coeffs(de(PI * PI));
        assert!(cp.a.abs() < 1e-14);
        assert!((cp.b + Complex::real(1.0)).abs() < 1e-13);
        assert!((cp.c + Complex::real(1.0)).abs() < 1e-13);

        for &eps in &[1e-6, 0.3, 2.0, 97.0, 1e4, -1e-6, -0.3, -2.0, -97.0, -1e4] {
            let sc = coeffs(de(eps));
            assert!(
                (sc.a * sc.a - sc.b * sc.b - sc.c).abs() < 1e-10,
                "det identity broken at {eps}"
            );
        }
    }

    #[test]
    fn spectral_function_fixed_points() {
        let id = Unitary2::identity();
        assert!(spectral_function(&id, de(0.0)).abs() < 1e-14);

        let dirichlet = presets::dirichlet();
        assert!(spectral_function(&dirichlet, de(0.0)).abs() > 0.5);
        assert!(spectral_function(&dirichlet, de(PI * PI)).abs() < 1e-13);
    }

    #[test]
    fn expansion_matches_determinant_route() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0201);
        let grid: Vec<f64> = (0..40)
            .flat_map(|i| {
                let mag = 10f64.powf(-6.0 + 10.0 * i as f64 / 39.0);
                [mag, -mag]
            })
            .collect();
        for _ in 0..100 {
            let u = sample::random_unitary(&mut rng);
            for &eps in &grid {
                let f1 = spectral_function(&u, de(eps));
                let f2 = spectral_function_direct(&u, de(eps));
                assert!(
                    (f1 - f2).abs() < 1e-10 * (1.0 + f1.abs()),
                    "routes disagree at eps = {eps:e}: {f1:?} vs {f2:?}"
                );
            }
        }
    }

    #[test]
    fn continuity_at_zero_energy() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0202);
        for _ in 0..100 {
            let u = sample::random_unitary(&mut rng);
            let f0 = spectral_function(&u, de(0.0));
            for eps in [1e-6, -1e-6] {
                assert!((spectral_function(&u, de(eps)) - f0).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn alt_function_shares_roots_and_factorizes() {
        let dirichlet = presets::dirichlet();
        let f = spectral_function_alt(&dirichlet, de(PI * PI)).unwrap();
        assert!(f.abs() < 1e-11);

        // Neumann eigenvalues sit at x = nπ, so x = π/2 is not a root
        let neumann = presets::neumann();
        let f = spectral_function_alt(&neumann, de(PI * PI / 4.0)).unwrap();
        assert!(f.abs() > 0.1);

        assert!(matches!(
            spectral_function_alt(&neumann, de(0.0)),
            Err(Error::ZeroEnergy { .. })
        ));

        let mut rng = StdRng::seed_from_u64(0x5eed_0203);
        for _ in 0..50 {
            let u = sample::random_unitary(&mut rng);
            for &eps in &[0.7, -3.3, 44.0] {
                let alt = spectral_function_alt(&u, de(eps)).unwrap();
                let expected = boundary_matrices(de(eps)).a_plus.det() * spectral_function(&u, de(eps));
                assert!(
                    (alt - expected).abs() < 1e-9 * expected.abs().max(1.0),
                    "factorization off at {eps}"
                );
            }
        }
    }

    #[test]
    fn alt_function_is_discontinuous_at_zero() {
        // F̃(ε̂ → 0) → 0 while the affine-basis value at 0 stays finite.
        let dirichlet = presets::dirichlet();
        let near = spectral_function_alt(&dirichlet, de(1e-6)).unwrap();
        let bm0 = boundary_matrices(de(0.0));
        let at0 = (bm0.a_minus - *dirichlet.matrix() * bm0.a_plus).det();
        assert!((near - at0).abs() > 1e-3);
    }

    #[test]
    fn secular_closed_forms_for_presets() {
        let grid: Vec<f64> = (1..200).map(|i| i as f64 * 0.11).collect();
        let dirichlet = presets::dirichlet();
        let neumann = presets::neumann();
        let periodic = presets::periodic();
        for &x in &grid {
            let e = de(x * x);
            let s = secular(&dirichlet, e).unwrap();
            assert!((s - 4.0 * x.sin()).abs() < 1e-11 * (1.0 + x * x));
            let s = secular(&neumann, e).unwrap();
            assert!((s - 4.0 * x * x * x.sin()).abs() < 1e-10 * (1.0 + x * x * x));
            let s = secular(&periodic, e).unwrap();
            assert!((s - 4.0 * x * (1.0 - x.cos())).abs() < 1e-10 * (1.0 + x * x));
        }
        assert!(matches!(
            secular(&dirichlet, de(0.0)),
            Err(Error::ZeroEnergy { .. })
        ));
    }

    #[test]
    fn secular_reality_of_rescaled_spectral_function() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0204);
        for _ in 0..100 {
            let u = sample::random_unitary(&mut rng);
            let p = to_params(&u);
            let phase = Complex::unit_phase(-p.eta);
            for i in 0..20 {
                let mag = 10f64.powf(-4.0 + 7.0 * i as f64 / 19.0);
                for eps in [mag, -mag] {
                    let sc = coeffs(de(eps));
                    let z = phase * sc.denom * spectral_function(&u, de(eps));
                    let scale = 1.0 + z.abs();
                    if eps > 0.0 {
                        assert!(z.im.abs() < 1e-10 * scale, "Im = {:e} at {eps}", z.im);
                    } else {
                        assert!(z.re.abs() < 1e-10 * scale, "Re = {:e} at {eps}", z.re);
                    }
                }
            }
        }
    }

    #[test]
    fn secular_matches_rescaled_spectral_function() {
        // secular = Re(e^{−iη} D F) on the positive branch, Im(...) negative
        let mut rng = StdRng::seed_from_u64(0x5eed_0205);
        for _ in 0..30 {
            let u = sample::random_unitary(&mut rng);
            let p = to_params(&u);
            let phase = Complex::unit_phase(-p.eta);
            let eval = SecularEval::new(&SpectralClass::of(&u));
            for i in 1..40 {
                let x = 0.3 * i as f64;
                let e = de(x * x);
                let z = phase * coeffs(e).denom * spectral_function(&u, e);
                assert!((z.re - eval.positive(x)).abs() < 1e-9 * (1.0 + z.abs()));

                let e = de(-x * x);
                let z = phase * coeffs(e).denom * spectral_function(&u, e);
                assert!((z.im - eval.negative_scaled(x)).abs() < 1e-9 * (1.0 + z.abs()));
            }
        }
    }

    #[test]
    fn scaled_and_unscaled_negative_branch_agree() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0206);
        for _ in 0..20 {
            let u = sample::random_unitary(&mut rng);
            let eval = SecularEval::new(&SpectralClass::of(&u));
            for i in 1..100 {
                let kappa = i as f64;
                let scaled = eval.negative_scaled(kappa);
                let unscaled = eval.negative_unscaled(kappa);
                let expected = unscaled * (-kappa).exp();
                assert!(
                    (scaled - expected).abs() < 1e-9 * (1.0 + scaled.abs()),
                    "scaling mismatch at kappa = {kappa}"
                );
            }
        }
    }

    #[test]
    fn secular_derivatives_match_finite_differences() {
        let mut rng = StdRng::seed_from_u64(0x5eed_0207);
        for _ in 0..20 {
            let u = sample::random_unitary(&mut rng);
            let eval = SecularEval::new(&SpectralClass::of(&u));
            let h = 1e-6;
            for i in 1..60 {
                let x = 0.45 * i as f64;
                let fd = (eval.positive(x + h) - eval.positive(x - h)) / (2.0 * h);
                assert!(
                    (eval.positive_deriv(x) - fd).abs() < 1e-4 * (1.0 + fd.abs()),
                    "positive deriv off at x = {x}"
                );
                let fd = (eval.negative_scaled(x + h) - eval.negative_scaled(x - h)) / (2.0 * h);
                assert!(
                    (eval.negative_scaled_deriv(x) - fd).abs() < 1e-4 * (1.0 + fd.abs()),
                    "negative deriv off at kappa = {x}"
                );
            }
        }
    }

    #[test]
    fn zero_mode_condition_named_cases() {
        assert!(zero_mode_condition(&presets::neumann()));
        assert!(zero_mode_condition(&presets::periodic()));
        assert!(!zero_mode_condition(&presets::dirichlet()));
    }

    #[test]
    fn det_identity_cases() {
        let id = Mat2::identity();
        assert!(det_identity(&id, &id).abs() < 1e-15);
        assert!((det_identity(&id, &Mat2::zero()) - Complex::real(1.0)).abs() < 1e-15);

        let mut rng = StdRng::seed_from_u64(0x5eed_0208);
        for _ in 0..100 {
            let m = *sample::random_unitary(&mut rng).matrix();
            let n = *sample::random_unitary(&mut rng).matrix();
            let lhs = det_identity(&m, &n);
            let rhs = (m - n).det();
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn class_reduction_is_bit_identical() {
        // F computed from a class is a pure function of (η, m0, m1):
        // boundary conditions sharing the triple give bit-identical values.
        let mut rng = StdRng::seed_from_u64(0x5eed_0209);
        for _ in 0..50 {
            let u = sample::random_unitary(&mut rng);
            let class = SpectralClass::of(&u);
            for i in 0..10 {
                let eps = -3.0 + 0.7 * i as f64;
                let f1 = spectral_function_class(&class, de(eps));
                let f2 = spectral_function_class(&class.clone(), de(eps));
                assert!(f1.re.to_bits() == f2.re.to_bits() && f1.im.to_bits() == f2.im.to_bits());
            }
        }
    }
}
