//! Deterministic samplers for boundary conditions.
//!
//! Seeded sampling of Haar-like random U(2) matrices, used by the
//! verification suites and useful for parameter scans.

use std::f64::consts::PI;

use rand::Rng;

use crate::algebra::{from_params, BoundaryParams, Unitary2};

pub fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

/// Standard normal via Box-Muller.
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen::<f64>();
        if u > 0.0 {
            let v: f64 = rng.gen::<f64>();
            return (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos();
        }
    }
}

/// Uniform point on S³ paired with η uniform in [0, π).
pub fn random_params<R: Rng>(rng: &mut R) -> BoundaryParams {
    let mut m = [0.0_f64; 4];
    loop {
        for v in m.iter_mut() {
            *v = gaussian(rng);
        }
        let norm = m.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for v in m.iter_mut() {
                *v /= norm;
            }
            break;
        }
    }
    let eta = uniform(rng, 0.0, PI).min(PI - f64::EPSILON);
    BoundaryParams::new(eta, m[0], m[1], m[2], m[3])
        .expect("sampled parameters satisfy the constraints")
}

pub fn random_unitary<R: Rng>(rng: &mut R) -> Unitary2 {
    from_params(&random_params(rng))
}

/// Random SU(2) element (η = 0 slice of the covering).
pub fn random_special_unitary<R: Rng>(rng: &mut R) -> Unitary2 {
    let mut p = random_params(rng);
    p.eta = 0.0;
    from_params(&p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn sampled_matrices_are_unitary() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let u = random_unitary(&mut rng);
            let p = u.to_params();
            let norm = p.m0 * p.m0 + p.m1 * p.m1 + p.m2 * p.m2 + p.m3 * p.m3;
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let m = random_special_unitary(&mut rng);
        assert!((m.matrix().det().re - 1.0).abs() < 1e-12);
        assert!(m.matrix().det().im.abs() < 1e-12);
    }
}
