//! Complex 2×2 arithmetic, U(2) parametrizations and group-extension maps.

pub mod complex;
pub mod mat2;
pub mod params;
pub mod unitary;

pub use complex::Complex;
pub use mat2::Mat2;
pub use params::{from_params, to_params, BoundaryParams, S3_TOL};
pub use unitary::{
    cover_project, negate, phi_action, section, semidirect_split, unitarity_defect, Traces,
    Unitary2, UNITARITY_TOL,
};
