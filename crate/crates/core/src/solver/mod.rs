//! Root location and spectrum assembly.
//!
//! The solver brackets sign changes of the real secular function on a
//! grid, refines them with Brent's method, pins tangential (double-root)
//! candidates by bisecting the secular derivative, and assigns
//! multiplicities through the rank test B(ε̂) = U. The zero eigenvalue is
//! never scanned for: it is decided analytically by the zero-mode
//! condition.

mod bracket;
mod refine;

pub use bracket::{Bracket, BracketKind};

use std::f64::consts::PI;

use crate::algebra::{Complex, Unitary2};
use crate::error::{Error, Result};
use crate::exec;
use crate::spectral::{
    b_matrix, boundary_matrices, spectral_function_class, Branch, DimlessEnergy, SecularEval,
};
use crate::symmetry::SpectralClass;

use bracket::{scan_branch, ZERO_EXCLUSION};

/// Scan window: positive branch x ∈ (0, x_max], negative branch
/// κ ∈ (0, kappa_max].
#[derive(Clone, Copy, Debug)]
pub struct ScanWindow {
    pub x_max: f64,
    pub kappa_max: f64,
}

impl Default for ScanWindow {
    fn default() -> Self {
        Self {
            x_max: 50.0 * PI,
            kappa_max: 60.0,
        }
    }
}

impl ScanWindow {
    pub fn new(x_max: f64, kappa_max: f64) -> Result<Self> {
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "x_max = {x_max} must be positive"
            )));
        }
        if !(kappa_max.is_finite() && kappa_max >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa_max = {kappa_max} must be non-negative"
            )));
        }
        Ok(Self { x_max, kappa_max })
    }
}

/// Solver tolerances; the defaults are the documented contract.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Scan grid step in x (and κ).
    pub grid_step: f64,
    /// Target bracket width for root refinement.
    pub refine_x: f64,
    /// Tangency threshold: |secular| below this fraction of the local
    /// envelope flags a double-root candidate.
    pub tangent_rel: f64,
    /// Accepted |F_U| residual per root, scaled by (1 + |ε̂|).
    pub root_residual: f64,
    /// Frobenius threshold on ‖B(ε̂) − U‖ for multiplicity 2.
    pub multiplicity: f64,
    /// Residual threshold of the zero-mode condition.
    pub zero_mode: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            grid_step: PI / 100.0,
            refine_x: 5e-13,
            tangent_rel: 1e-3,
            root_residual: 1e-8,
            multiplicity: 1e-7,
            zero_mode: crate::spectral::ZERO_MODE_TOL,
        }
    }
}

/// One located eigenvalue in dimensionless form.
#[derive(Clone, Copy, Debug)]
pub struct SpectralPoint {
    /// kℓ on the positive branch, κℓ on the negative branch, 0 at the zero mode.
    pub x: f64,
    pub branch: Branch,
    /// ε̂ = x², −x² or 0 according to the branch.
    pub eps_hat: f64,
    pub multiplicity: u8,
}

/// A solved spectrum: points ascending strictly in ε̂.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub points: Vec<SpectralPoint>,
    pub zero_mode: bool,
    pub window: ScanWindow,
    pub tolerances: Tolerances,
    /// Dropped candidates and scan notes.
    pub diagnostics: Vec<String>,
}

impl Spectrum {
    /// ε̂ values with multiplicity expanded, ascending.
    pub fn eigenvalues_expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.points.len());
        for p in &self.points {
            for _ in 0..p.multiplicity {
                out.push(p.eps_hat);
            }
        }
        out
    }

    /// Positive-branch x values with multiplicity expanded, ascending.
    pub fn positive_x_expanded(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for p in &self.points {
            if p.branch == Branch::Positive {
                for _ in 0..p.multiplicity {
                    out.push(p.x);
                }
            }
        }
        out
    }

    pub fn negative_count(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.branch == Branch::Negative)
            .map(|p| p.multiplicity as usize)
            .sum()
    }
}

/// Outcome of refining one bracket.
#[derive(Clone, Debug)]
pub enum Refined {
    Root(SpectralPoint),
    /// A same-sign dip that actually crosses zero: two resolved roots.
    Pair(SpectralPoint, SpectralPoint),
    /// Candidate discarded (reason recorded in diagnostics).
    Rejected(String),
}

/// Scan for candidate brackets without refining them.
pub fn scan_brackets(u: &Unitary2, window: &ScanWindow, grid_step: f64) -> Vec<Bracket> {
    let eval = SecularEval::new(&SpectralClass::of(u));
    let tangent_rel = Tolerances::default().tangent_rel;
    let mut out = scan_branch(&eval, Branch::Positive, window.x_max, grid_step, tangent_rel);
    out.extend(scan_branch(
        &eval,
        Branch::Negative,
        window.kappa_max,
        grid_step,
        tangent_rel,
    ));
    out
}

fn point_at(branch: Branch, t: f64, multiplicity: u8) -> SpectralPoint {
    let eps_hat = match branch {
        Branch::Positive => t * t,
        Branch::Negative => -t * t,
        Branch::Zero => 0.0,
    };
    SpectralPoint {
        x: t,
        branch,
        eps_hat,
        multiplicity,
    }
}

fn residual(class: &SpectralClass, eps_hat: f64) -> f64 {
    spectral_function_class(class, DimlessEnergy::new(eps_hat)).abs()
}

fn multiplicity_at(u: &Unitary2, eps_hat: f64, tol_mult: f64) -> u8 {
    let b = b_matrix(DimlessEnergy::new(eps_hat));
    if (b - *u.matrix()).frobenius_norm() < tol_mult {
        2
    } else {
        1
    }
}

/// Multiplicity of a confirmed root: 2 iff the boundary condition
/// annihilates the full solution space, i.e. B(ε̂) = U.
pub fn multiplicity_of(u: &Unitary2, p: &SpectralPoint) -> u8 {
    multiplicity_at(u, p.eps_hat, Tolerances::default().multiplicity)
}

/// Refine one bracket to a spectral point (or a resolved pair, or a
/// rejection for spurious shallow minima).
pub fn refine_root(u: &Unitary2, bracket: &Bracket, tol: &Tolerances) -> Result<Refined> {
    let class = SpectralClass::of(u);
    let eval = SecularEval::new(&class);
    refine_with(&eval, &class, u, bracket, tol)
}

fn refine_with(
    eval: &SecularEval,
    class: &SpectralClass,
    u: &Unitary2,
    bracket: &Bracket,
    tol: &Tolerances,
) -> Result<Refined> {
    let branch = bracket.branch;
    let f = |t: f64| match branch {
        Branch::Positive => eval.positive(t),
        Branch::Negative => eval.negative_scaled(t),
        Branch::Zero => unreachable!(),
    };
    let g = |t: f64| match branch {
        Branch::Positive => eval.positive_deriv(t),
        Branch::Negative => eval.negative_scaled_deriv(t),
        Branch::Zero => unreachable!(),
    };
    let branch_name = match branch {
        Branch::Positive => "positive",
        Branch::Negative => "negative",
        Branch::Zero => "zero",
    };

    let accept = |t: f64| -> Refined {
        let eps = match branch {
            Branch::Positive => t * t,
            Branch::Negative => -t * t,
            Branch::Zero => 0.0,
        };
        let res = residual(class, eps);
        if res <= tol.root_residual * (1.0 + eps.abs()) {
            Refined::Root(point_at(branch, t, multiplicity_at(u, eps, tol.multiplicity)))
        } else {
            Refined::Rejected(format!(
                "candidate at {branch_name} x = {t:.9} failed the residual check (|F| = {res:.3e})"
            ))
        }
    };

    match bracket.kind {
        BracketKind::SignChange => {
            let (flo, fhi) = (f(bracket.lo), f(bracket.hi));
            let root = refine::brent(&f, bracket.lo, bracket.hi, flo, fhi, tol.refine_x, 300)
                .ok_or(Error::RefinementFailed {
                    lo: bracket.lo,
                    hi: bracket.hi,
                    branch: branch_name,
                })?;
            Ok(accept(root))
        }
        BracketKind::Tangential => {
            let (glo, ghi) = (g(bracket.lo), g(bracket.hi));
            if glo.signum() == ghi.signum() && glo != 0.0 && ghi != 0.0 {
                return Ok(Refined::Rejected(format!(
                    "tangential candidate near {branch_name} x = {:.6} has no interior extremum",
                    0.5 * (bracket.lo + bracket.hi)
                )));
            }
            let x_star = refine::bisect(&g, bracket.lo, bracket.hi, glo, tol.refine_x);
            let s_star = f(x_star);
            let edge = f(bracket.lo);
            let split_floor = 64.0 * f64::EPSILON * eval.envelope(x_star);
            if s_star.abs() > split_floor && s_star.signum() != edge.signum() {
                // the dip crosses zero: two separate simple roots
                let left = refine::brent(&f, bracket.lo, x_star, edge, s_star, tol.refine_x, 300)
                    .ok_or(Error::RefinementFailed {
                        lo: bracket.lo,
                        hi: x_star,
                        branch: branch_name,
                    })?;
                let right =
                    refine::brent(&f, x_star, bracket.hi, s_star, f(bracket.hi), tol.refine_x, 300)
                        .ok_or(Error::RefinementFailed {
                            lo: x_star,
                            hi: bracket.hi,
                            branch: branch_name,
                        })?;
                match (accept(left), accept(right)) {
                    (Refined::Root(a), Refined::Root(b)) => Ok(Refined::Pair(a, b)),
                    (r @ Refined::Rejected(_), _) | (_, r @ Refined::Rejected(_)) => Ok(r),
                    _ => unreachable!("accept yields only Root or Rejected"),
                }
            } else {
                let eps = match branch {
                    Branch::Positive => x_star * x_star,
                    Branch::Negative => -x_star * x_star,
                    Branch::Zero => 0.0,
                };
                let res = residual(class, eps);
                if res <= tol.root_residual * (1.0 + eps.abs()) {
                    Ok(accept(x_star))
                } else {
                    Ok(Refined::Rejected(format!(
                        "shallow minimum near {branch_name} x = {x_star:.9} discarded \
                         (|F| = {res:.3e})"
                    )))
                }
            }
        }
    }
}

/// Upper bound for the κ of any negative-branch bound state of a class.
///
/// For κ of a few and beyond, the rescaled secular function equals
/// −q(κ) up to e^{−κ} corrections, with
/// q(κ) = (cos η + m0)κ² + 2 sin η κ − (cos η − m0), whose discriminant
/// 4(1 − m0²) is never negative. Past the largest positive root of q the
/// secular function is sign-definite, so no bound state lies beyond the
/// returned value. Returns 0 when q has no positive root.
pub fn negative_branch_kappa_bound(class: &SpectralClass) -> f64 {
    let (se, ce) = class.eta.sin_cos();
    let a = ce + class.m0;
    let disc = (1.0 - class.m0 * class.m0).max(0.0).sqrt();
    let root = if a.abs() < 1e-14 {
        // linear: 2 sin η κ = cos η − m0
        if se.abs() < 1e-14 {
            0.0
        } else {
            ((ce - class.m0) / (2.0 * se)).max(0.0)
        }
    } else {
        let r1 = (-se + disc) / a;
        let r2 = (-se - disc) / a;
        r1.max(r2).max(0.0)
    };
    if root == 0.0 {
        0.0
    } else {
        root + 2.0
    }
}

/// Sign-definiteness of the rescaled secular function at and beyond the
/// negative-branch cutoff; a violation means a bound state may hide
/// beyond the window. Skipped for very small user-truncated windows
/// where the asymptotic form does not apply yet.
fn check_cutoff(class: &SpectralClass, kappa_max: f64) -> Result<()> {
    if kappa_max < 5.0 {
        return Ok(());
    }
    if negative_branch_kappa_bound(class) > kappa_max + 1.0 {
        return Err(Error::CutoffNotSignDefinite { kappa_max });
    }
    Ok(())
}

/// Merge refined roots closer than the multiplicity resolution; a cluster
/// of two unresolvably close roots is one point of multiplicity 2.
fn merge_close_roots(
    mut points: Vec<SpectralPoint>,
    class: &SpectralClass,
    merge_tol: f64,
) -> Vec<SpectralPoint> {
    points.sort_by(|a, b| a.x.total_cmp(&b.x));
    let mut out: Vec<SpectralPoint> = Vec::with_capacity(points.len());
    for p in points {
        match out.last_mut() {
            Some(last) if last.branch == p.branch && (p.x - last.x).abs() < merge_tol * (1.0 + p.x) => {
                // keep the representative with the smaller residual
                if residual(class, p.eps_hat) < residual(class, last.eps_hat) {
                    let mult = last.multiplicity.max(2);
                    *last = p;
                    last.multiplicity = mult;
                } else {
                    last.multiplicity = last.multiplicity.max(2);
                }
            }
            _ => out.push(p),
        }
    }
    out
}

fn solve_pass(
    eval: &SecularEval,
    class: &SpectralClass,
    u: &Unitary2,
    window: &ScanWindow,
    tol: &Tolerances,
    step: f64,
) -> Result<(Vec<SpectralPoint>, Vec<String>)> {
    let mut brackets = scan_branch(eval, Branch::Positive, window.x_max, step, tol.tangent_rel);
    brackets.extend(scan_branch(
        eval,
        Branch::Negative,
        window.kappa_max,
        step,
        tol.tangent_rel,
    ));

    // brackets are disjoint; refine them in parallel when enabled
    let refined = exec::map_slice(&brackets, |b| refine_with(eval, class, u, b, tol));

    let mut points = Vec::new();
    let mut diagnostics = Vec::new();
    for r in refined {
        match r? {
            Refined::Root(p) => points.push(p),
            Refined::Pair(a, b) => {
                points.push(a);
                points.push(b);
            }
            Refined::Rejected(msg) => diagnostics.push(msg),
        }
    }

    let merge_tol = tol.multiplicity;
    let positive: Vec<SpectralPoint> = points
        .iter()
        .copied()
        .filter(|p| p.branch == Branch::Positive)
        .collect();
    let negative: Vec<SpectralPoint> = points
        .iter()
        .copied()
        .filter(|p| p.branch == Branch::Negative)
        .collect();
    let mut merged = merge_close_roots(negative, class, merge_tol);
    // negative branch ascends in ε̂ = −κ², i.e. descending κ
    merged.sort_by(|a, b| b.x.total_cmp(&a.x));
    merged.extend(merge_close_roots(positive, class, merge_tol));
    Ok((merged, diagnostics))
}

/// Largest deviation of the eigenvalue counting function from the
/// Dirichlet one over the scanned window. A rank-two boundary
/// perturbation can shift the count by at most 2; larger deviations
/// indicate missed roots.
pub fn counting_deviation(points: &[SpectralPoint], x_max: f64) -> i64 {
    let ours: Vec<f64> = {
        let mut v = Vec::new();
        for p in points {
            for _ in 0..p.multiplicity {
                v.push(p.eps_hat);
            }
        }
        v.sort_by(|a, b| a.total_cmp(b));
        v
    };
    let dirichlet: Vec<f64> = (1..)
        .map(|n| n as f64 * PI)
        .take_while(|x| *x <= x_max)
        .map(|x| x * x)
        .collect();

    let (mut i, mut j) = (0usize, 0usize);
    let mut diff: i64 = 0;
    let mut worst: i64 = 0;
    while i < ours.len() || j < dirichlet.len() {
        let next = match (ours.get(i), dirichlet.get(j)) {
            (Some(a), Some(b)) => a.min(*b),
            (Some(a), None) => *a,
            (None, Some(b)) => *b,
            (None, None) => break,
        };
        let group = 1e-9 * (1.0 + next.abs());
        while i < ours.len() && ours[i] <= next + group {
            diff += 1;
            i += 1;
        }
        while j < dirichlet.len() && dirichlet[j] <= next + group {
            diff -= 1;
            j += 1;
        }
        worst = worst.max(diff.abs());
    }
    worst
}

/// Locate every eigenvalue of H_U inside the window.
///
/// Returns the sorted spectrum including the zero mode (decided by the
/// zero-mode condition, never by scanning) and any negative-branch bound
/// states. One automatic halved-step rescan is performed if the counting
/// check against the Dirichlet spectrum fails.
pub fn solve_spectrum(u: &Unitary2, window: &ScanWindow, tol: &Tolerances) -> Result<Spectrum> {
    if !(window.x_max.is_finite() && window.x_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scan window x_max = {} must be positive",
            window.x_max
        )));
    }
    if !(window.kappa_max.is_finite() && window.kappa_max >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scan window kappa_max = {} must be non-negative",
            window.kappa_max
        )));
    }
    if !(tol.grid_step.is_finite() && tol.grid_step > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "grid step = {} must be positive",
            tol.grid_step
        )));
    }

    let class = SpectralClass::of(u);
    let eval = SecularEval::new(&class);
    if window.kappa_max > ZERO_EXCLUSION {
        check_cutoff(&class, window.kappa_max)?;
    }

    let mut diagnostics = Vec::new();
    let (mut scanned, diag) = solve_pass(&eval, &class, u, window, tol, tol.grid_step)?;
    diagnostics.extend(diag);

    let zero_point = if class.zero_mode_residual().abs() < tol.zero_mode {
        Some(point_at(
            Branch::Zero,
            0.0,
            multiplicity_at(u, 0.0, tol.multiplicity),
        ))
    } else {
        None
    };

    let assemble = |scanned: &[SpectralPoint]| -> Vec<SpectralPoint> {
        let mut pts: Vec<SpectralPoint> = scanned
            .iter()
            .copied()
            .filter(|p| p.branch == Branch::Negative)
            .collect();
        pts.extend(zero_point);
        pts.extend(
            scanned
                .iter()
                .copied()
                .filter(|p| p.branch == Branch::Positive),
        );
        pts
    };

    let mut points = assemble(&scanned);
    if counting_deviation(&points, window.x_max) > 2 {
        // halve the grid once and rescan
        let (rescanned, diag) = solve_pass(&eval, &class, u, window, tol, tol.grid_step / 2.0)?;
        diagnostics.extend(diag);
        scanned = rescanned;
        points = assemble(&scanned);
        let dev = counting_deviation(&points, window.x_max);
        if dev > 2 {
            diagnostics.push(format!(
                "counting check still fails after halved rescan (deviation {dev})"
            ));
        } else {
            diagnostics.push("grid halved once after a failed counting check".to_string());
        }
    }

    debug_assert!(points.windows(2).all(|w| w[0].eps_hat < w[1].eps_hat));

    Ok(Spectrum {
        zero_mode: zero_point.is_some(),
        points,
        window: *window,
        tolerances: *tol,
        diagnostics,
    })
}

/// Pointwise deviation between two spectra: the largest |Δx| over the
/// multiplicity-expanded, branch-tagged point lists. None when the two
/// spectra differ structurally (zero-mode flag, level count or branch
/// pattern).
pub fn max_pointwise_x_deviation(a: &Spectrum, b: &Spectrum) -> Option<f64> {
    if a.zero_mode != b.zero_mode {
        return None;
    }
    let expand = |s: &Spectrum| -> Vec<(Branch, f64)> {
        let mut v = Vec::new();
        for p in &s.points {
            for _ in 0..p.multiplicity {
                v.push((p.branch, p.x));
            }
        }
        v
    };
    let (ea, eb) = (expand(a), expand(b));
    if ea.len() != eb.len() {
        return None;
    }
    let mut worst = 0.0_f64;
    for ((ba, xa), (bb, xb)) in ea.iter().zip(&eb) {
        if ba != bb {
            return None;
        }
        worst = worst.max((xa - xb).abs());
    }
    Some(worst)
}

/// One L²-normalized eigenfunction, as coefficients over the solution
/// basis of its branch: {e^{ixx̂}, e^{−ixx̂}} for ε̂ > 0,
/// {e^{−κx̂}, e^{κx̂}} for ε̂ < 0, and {1, x̂} for the zero mode.
#[derive(Clone, Copy, Debug)]
pub struct Eigenfunction {
    pub c1: Complex,
    pub c2: Complex,
    pub branch: Branch,
    /// x or κ of the owning spectral point.
    pub x: f64,
}

impl Eigenfunction {
    /// Evaluate ψ(x̂) for x̂ ∈ [−1/2, 1/2].
    pub fn eval(&self, xhat: f64) -> Complex {
        match self.branch {
            Branch::Positive => {
                self.c1 * Complex::unit_phase(self.x * xhat)
                    + self.c2 * Complex::unit_phase(-self.x * xhat)
            }
            Branch::Negative => {
                self.c1.scale((-self.x * xhat).exp()) + self.c2.scale((self.x * xhat).exp())
            }
            Branch::Zero => self.c1 + self.c2.scale(xhat),
        }
    }
}

/// Closed-form L² inner product over [−1/2, 1/2] of two coefficient
/// vectors on one branch.
fn l2_inner(branch: Branch, t: f64, c: (Complex, Complex), d: (Complex, Complex)) -> Complex {
    let diag = c.0.conj() * d.0 + c.1.conj() * d.1;
    let cross = c.0.conj() * d.1 + c.1.conj() * d.0;
    match branch {
        Branch::Positive => diag + cross.scale(t.sin() / t),
        Branch::Negative => diag.scale(t.sinh() / t) + cross,
        Branch::Zero => c.0.conj() * d.0 + (c.1.conj() * d.1).scale(1.0 / 12.0),
    }
}

/// A basis of normalized eigenfunctions at a confirmed spectral point
/// (length = multiplicity). Fails when the boundary system has no
/// numerical null space there.
pub fn eigenfunction_at(u: &Unitary2, p: &SpectralPoint) -> Result<Vec<Eigenfunction>> {
    let e = DimlessEnergy::new(p.eps_hat);
    let bm = boundary_matrices(e);
    let m = bm.a_minus - *u.matrix() * bm.a_plus;
    let scale = 1.0 + m.frobenius_norm();
    let sigma_min = m.smallest_singular_value();
    if sigma_min > 1e-6 * scale {
        return Err(Error::InconsistentRoot {
            sigma_min,
            tol: 1e-6 * scale,
        });
    }

    // Raw null vectors in the solution basis used to build A±.
    let raw: Vec<(Complex, Complex)> = if p.multiplicity == 2 {
        vec![
            (Complex::real(1.0), Complex::real(0.0)),
            (Complex::real(0.0), Complex::real(1.0)),
        ]
    } else {
        let v1 = (m.e12, -m.e11);
        let v2 = (m.e22, -m.e21);
        let n1 = v1.0.norm_sqr() + v1.1.norm_sqr();
        let n2 = v2.0.norm_sqr() + v2.1.norm_sqr();
        vec![if n1 >= n2 { v1 } else { v2 }]
    };

    // The affine A±(0) are built over {1, −x̂}; flip to the public {1, x̂}.
    let to_public = |v: (Complex, Complex)| -> (Complex, Complex) {
        if p.branch == Branch::Zero {
            (v.0, -v.1)
        } else {
            v
        }
    };

    let mut out: Vec<Eigenfunction> = Vec::with_capacity(raw.len());
    for v in raw {
        let mut c = to_public(v);
        // L²-orthogonalize against previous members (degenerate pairs)
        for prev in &out {
            let overlap = l2_inner(p.branch, p.x, (prev.c1, prev.c2), c);
            c = (c.0 - prev.c1 * overlap, c.1 - prev.c2 * overlap);
        }
        let norm = l2_inner(p.branch, p.x, c, c).re.sqrt();
        if !(norm.is_finite() && norm > 1e-12) {
            return Err(Error::InconsistentRoot {
                sigma_min,
                tol: 1e-6 * scale,
            });
        }
        let c = (c.0.scale(1.0 / norm), c.1.scale(1.0 / norm));

        // residual in the solution basis feeding A±
        let back = if p.branch == Branch::Zero {
            (c.0, -c.1)
        } else {
            c
        };
        let r = m.apply(back);
        let res = (r.0.norm_sqr() + r.1.norm_sqr()).sqrt();
        debug_assert!(res < 1e-8, "boundary residual {res:e}");

        out.push(Eigenfunction {
            c1: c.0,
            c2: c.1,
            branch: p.branch,
            x: p.x,
        });
    }
    Ok(out)
}
