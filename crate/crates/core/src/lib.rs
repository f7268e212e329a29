//! Exact energy spectra of a free particle on a ring with a junction,
//! for arbitrary U(2) boundary conditions.
//!
//! The junction is described by a single unitary U through the relation
//! (I − U)Ψ = i(I + U)Ψ' between the boundary values and boundary
//! derivatives. This crate evaluates the spectral function whose zeros
//! are the energy levels, locates all of them in a scan window, classifies
//! boundary conditions under parity and time reversal, generates
//! isospectral families, and cross-validates spectra with an independent
//! finite-difference discretization.
//!
//! All quantities are dimensionless (ℓ = 1, ε̂ = εℓ²); physical units are
//! the CLI's concern.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod presets;
pub mod sample;
pub mod solver;
pub mod spectral;
pub mod symmetry;

pub use algebra::{BoundaryParams, Complex, Mat2, Unitary2};
pub use error::{Error, Result};
pub use solver::{solve_spectrum, ScanWindow, SpectralPoint, Spectrum, Tolerances};
pub use spectral::{Branch, DimlessEnergy};
pub use symmetry::{spectral_class, SpectralClass};
