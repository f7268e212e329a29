//! Parity and time-reversal actions on boundary conditions, and the
//! coordinates of the spectral space.
//!
//! Conjugation by e^{iδσx} changes the boundary condition without changing
//! the spectrum; the quotient by this action is coordinatized by
//! (η, m0, m1) with η ∈ [0, π), the closed unit disk in (m0, m1), and the
//! twist identification (η, m0, m1) ~ (η − π, −m0, −m1) across the seam.

use std::f64::consts::PI;

use crate::algebra::{to_params, Complex, Mat2, Unitary2};

/// Default tolerance for deciding membership in the parity-symmetric family.
pub const PARITY_TOL: f64 = 1e-10;

/// Tolerance used by [`SpectralClass::approx_eq`]; classes closer than this
/// in every coordinate (twist-aware) are the same spectrum.
pub const CLASS_TOL: f64 = 1e-12;

/// The three parameters the spectrum depends on: a point of the spectral
/// space Σ in canonical coordinates.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SpectralClass {
    pub eta: f64,
    pub m0: f64,
    pub m1: f64,
}

impl SpectralClass {
    pub fn of(u: &Unitary2) -> Self {
        let p = to_params(u);
        Self {
            eta: p.eta,
            m0: p.m0,
            m1: p.m1,
        }
    }

    /// Twist-aware comparison at tolerance `tol`: coordinates are compared
    /// directly and across the η ~ η ± π seam with (m0, m1) negated.
    pub fn approx_eq_tol(&self, other: &Self, tol: f64) -> bool {
        let direct = (self.eta - other.eta).abs() <= tol
            && (self.m0 - other.m0).abs() <= tol
            && (self.m1 - other.m1).abs() <= tol;
        if direct {
            return true;
        }
        let d_eta = (self.eta - other.eta).abs();
        (d_eta - PI).abs() <= tol
            && (self.m0 + other.m0).abs() <= tol
            && (self.m1 + other.m1).abs() <= tol
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.approx_eq_tol(other, CLASS_TOL)
    }

    /// Signed residual of the zero-mode condition
    /// cos η − 2 sin η = m0 + 2 m1.
    pub fn zero_mode_residual(&self) -> f64 {
        self.eta.cos() - 2.0 * self.eta.sin() - self.m0 - 2.0 * self.m1
    }
}

/// The spectrum-preserving conjugation U_δ = e^{iδσx} U e^{−iδσx}.
pub fn parity_conjugate(u: &Unitary2, delta: f64) -> Unitary2 {
    let (c, s) = (delta.cos(), delta.sin());
    let rot = Mat2::identity().scale(Complex::real(c)) + Mat2::sigma_x().scale(Complex::new(0.0, s));
    let rot_inv = Mat2::identity().scale(Complex::real(c))
        + Mat2::sigma_x().scale(Complex::new(0.0, -s));
    Unitary2::new(rot * *u.matrix() * rot_inv).expect("conjugation preserves unitarity")
}

/// Time reversal acts as U ↦ Uᵀ, flipping the sign of m2 only.
pub fn time_reverse(u: &Unitary2) -> Unitary2 {
    u.transpose()
}

/// True when U commutes with σx, i.e. lies in the family
/// U(η, θ) = e^{i(ηI + θσx)} (m2 = m3 = 0).
pub fn is_parity_symmetric(u: &Unitary2, tol: f64) -> bool {
    let p = to_params(u);
    p.m2.abs() < tol && p.m3.abs() < tol
}

/// Canonical coordinates of the spectrum of H_U in Σ.
pub fn spectral_class(u: &Unitary2) -> SpectralClass {
    SpectralClass::of(u)
}

/// Member of the parity-symmetric family U(η, θ) = e^{iη}(cos θ I + i sin θ σx).
pub fn parity_family(eta: f64, theta: f64) -> Unitary2 {
    let (c, s) = (theta.cos(), theta.sin());
    let m = Mat2::identity().scale(Complex::real(c)) + Mat2::sigma_x().scale(Complex::new(0.0, s));
    Unitary2::new_unchecked(m.scale(Complex::unit_phase(eta)))
}

/// A sampled parity orbit; all members share one spectral class.
#[derive(Clone, Debug)]
pub struct IsospectralFamily {
    pub base: Unitary2,
    pub class: SpectralClass,
    pub samples: Vec<(f64, Unitary2)>,
}

/// Sample the parity orbit of `u` at `n_samples` values of δ uniform in
/// [0, π) (conjugation by e^{iδσx} has period π up to a cancelling global
/// phase). Parity-symmetric boundary conditions are fixed points and
/// collapse to the single member δ = 0.
pub fn isospectral_family(u: &Unitary2, n_samples: usize) -> IsospectralFamily {
    assert!(n_samples >= 1, "n_samples must be at least 1");
    let class = SpectralClass::of(u);
    let samples = if is_parity_symmetric(u, PARITY_TOL) || n_samples == 1 {
        vec![(0.0, *u)]
    } else {
        (0..n_samples)
            .map(|j| {
                let delta = j as f64 * PI / n_samples as f64;
                (delta, parity_conjugate(u, delta))
            })
            .collect()
    };
    IsospectralFamily {
        base: *u,
        class,
        samples,
    }
}

/// The two zero-mode curves of the parity-symmetric family,
/// θ1(η) = η + 2η0 and θ2(η) = −η with η0 = arctan 2.
#[derive(Clone, Copy, Debug)]
pub struct ZeroModeCurves {
    pub eta0: f64,
}

impl ZeroModeCurves {
    pub fn theta1(&self, eta: f64) -> f64 {
        eta + 2.0 * self.eta0
    }

    pub fn theta2(&self, eta: f64) -> f64 {
        -eta
    }

    /// The single intersection of the two curves, reported in the canonical
    /// chart: η = π − η0 (the twist-folded image of η = −η0, where the
    /// curves meet at θ = π + η0).
    pub fn intersection_eta(&self) -> f64 {
        PI - self.eta0
    }
}

pub fn zero_mode_curves() -> ZeroModeCurves {
    ZeroModeCurves { eta0: 2.0_f64.atan() }
}

/// Where a boundary condition sits in the space of Hamiltonians
/// 𝓜 ≅ ∂Σ ∪ (Σ̊ × S¹).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Locus {
    /// Parity-symmetric: the unique Hamiltonian with its spectrum.
    Boundary,
    /// Member of a nontrivial isospectral circle.
    Interior,
}

pub fn hamiltonian_space_locus(u: &Unitary2) -> Locus {
    if is_parity_symmetric(u, PARITY_TOL) {
        Locus::Boundary
    } else {
        Locus::Interior
    }
}

impl std::fmt::Display for Locus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Locus::Boundary => write!(f, "boundary"),
            Locus::Interior => write!(f, "interior"),
        }
    }
}
