//! Named boundary conditions.
//!
//! The local presets confine the particle to a box (Dirichlet, Neumann),
//! while the non-local ones wire the two endpoints into a ring (periodic,
//! antiperiodic, quasiperiodic). Each matrix is pinned against its
//! closed-form spectrum by the solver test-suite.

use crate::algebra::{Complex, Mat2, Unitary2};

/// ψ(±1/2) = 0; U = −I, spectrum x = nπ.
pub fn dirichlet() -> Unitary2 {
    Unitary2::new_unchecked(Mat2::identity().scale(Complex::real(-1.0)))
}

/// ψ'(±1/2) = 0; U = I, zero mode plus x = nπ.
pub fn neumann() -> Unitary2 {
    Unitary2::identity()
}

/// ψ(−1/2) = ψ(1/2), ψ'(−1/2) = ψ'(1/2); U = σx, zero mode plus doubled
/// x = 2nπ.
pub fn periodic() -> Unitary2 {
    Unitary2::new_unchecked(Mat2::sigma_x())
}

/// ψ(−1/2) = −ψ(1/2); U = −σx, doubled x = (2n+1)π.
pub fn antiperiodic() -> Unitary2 {
    Unitary2::new_unchecked(-Mat2::sigma_x())
}

/// Flux-twisted ring junction ψ(1/2) = e^{iα}ψ(−1/2),
/// ψ'(1/2) = e^{iα}ψ'(−1/2).
///
/// Writing the admissible boundary data through Ψ± gives
/// U = (0, e^{−iα}; e^{iα}, 0): α = 0 reduces to the periodic junction and
/// the spectrum is x = |2πn + α| over all integers n.
pub fn quasiperiodic(alpha: f64) -> Unitary2 {
    Unitary2::new_unchecked(Mat2::new(
        Complex::real(0.0),
        Complex::unit_phase(-alpha),
        Complex::unit_phase(alpha),
        Complex::real(0.0),
    ))
}
