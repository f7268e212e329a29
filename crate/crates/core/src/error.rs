use thiserror::Error;

/// Errors surfaced by the boundary-condition spectra library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A matrix failed the unitarity check at construction.
    #[error("matrix is not unitary: Frobenius defect {defect:.3e} exceeds {tol:.3e}")]
    NotUnitary { defect: f64, tol: f64 },

    /// The requested operation is undefined at zero energy; the caller
    /// must use the dedicated zero-mode path instead.
    #[error("{op} is undefined at eps_hat = 0; use the zero-mode condition")]
    ZeroEnergy { op: &'static str },

    /// Root refinement did not converge inside the named bracket.
    #[error("root refinement failed to converge in bracket [{lo:.12e}, {hi:.12e}] ({branch})")]
    RefinementFailed {
        lo: f64,
        hi: f64,
        branch: &'static str,
    },

    /// The rescaled secular function is not sign-definite at the
    /// negative-branch cutoff, so bound states may lie beyond it.
    #[error(
        "rescaled secular function is not sign-definite at kappa_max = {kappa_max}; \
         a bound state may lie beyond the scan window"
    )]
    CutoffNotSignDefinite { kappa_max: f64 },

    /// Ghost-point elimination degenerated for this boundary condition.
    #[error("ghost elimination system is singular for this U (|det| = {det_mag:.3e})")]
    SingularGhostElimination { det_mag: f64 },

    /// The dense Hermitian eigensolver did not converge.
    #[error("eigensolver failed to converge: {0}")]
    EigensolverNoConvergence(String),

    /// A reported root has no numerical null space at the stated tolerance.
    #[error("inconsistent root: smallest singular value {sigma_min:.3e} exceeds {tol:.3e}")]
    InconsistentRoot { sigma_min: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
