//! Dense symmetric eigensolver for the finite-difference oracle.
//!
//! Householder tridiagonalization with stored reflectors, implicit-shift
//! QL for all eigenvalues, and shifted inverse iteration plus
//! back-transformation for the few eigenvectors needed by residual
//! checks. Complex Hermitian matrices X + iY enter through the real
//! symmetric embedding [[X, −Y], [Y, X]], which doubles every eigenvalue.

use crate::algebra::Complex;
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Outcome of tridiagonalization: T as (d, e) plus the Householder
/// reflectors needed to map T-eigenvectors back.
pub(crate) struct Tridiag {
    n: usize,
    /// Reflector vectors, stored below the diagonal of the work matrix.
    w: Vec<f64>,
    /// Half squared norms of the reflectors (zero = identity step).
    h: Vec<f64>,
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

/// Reduce a full symmetric matrix (row-major, both triangles filled) to
/// tridiagonal form in place.
pub(crate) fn tridiagonalize(a: &mut [f64], n: usize) -> Tridiag {
    assert_eq!(a.len(), n * n);
    let mut h_all = vec![0.0; n];
    let mut e = vec![0.0; n];

    let mut p = vec![0.0; n];
    let mut q = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1; // trailing block size
        let x0 = a[(k + 1) * n + k];
        let mut sigma = 0.0;
        for i in k + 1..n {
            let v = a[i * n + k];
            sigma += v * v;
        }
        if sigma == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let alpha = -x0.signum() * sigma.sqrt();
        let h = sigma - x0 * alpha;
        e[k] = alpha;
        a[(k + 1) * n + k] = x0 - alpha;
        h_all[k] = h;

        // p = B v / h over the trailing block
        {
            let pk = &mut p[k + 1..n];
            #[cfg(feature = "parallel")]
            {
                if m >= 256 {
                    pk.par_iter_mut().enumerate().for_each(|(ii, pi)| {
                        let i = k + 1 + ii;
                        let row = &a[i * n..i * n + n];
                        let mut acc = 0.0;
                        for j in k + 1..n {
                            acc += row[j] * a[j * n + k];
                        }
                        *pi = acc / h;
                    });
                } else {
                    for (ii, pi) in pk.iter_mut().enumerate() {
                        let i = k + 1 + ii;
                        let mut acc = 0.0;
                        for j in k + 1..n {
                            acc += a[i * n + j] * a[j * n + k];
                        }
                        *pi = acc / h;
                    }
                }
            }
            #[cfg(not(feature = "parallel"))]
            for (ii, pi) in pk.iter_mut().enumerate() {
                let i = k + 1 + ii;
                let mut acc = 0.0;
                for j in k + 1..n {
                    acc += a[i * n + j] * a[j * n + k];
                }
                *pi = acc / h;
            }
        }

        // q = p − (vᵀp / 2h) v
        let mut vp = 0.0;
        for (i, pi) in p.iter().enumerate().take(n).skip(k + 1) {
            vp += a[i * n + k] * pi;
        }
        let kappa = vp / (2.0 * h);
        for (i, qi) in q.iter_mut().enumerate().take(n).skip(k + 1) {
            *qi = p[i] - kappa * a[i * n + k];
        }

        // B ← B − v qᵀ − q vᵀ (full block; symmetry is maintained)
        {
            let v_col: Vec<f64> = (k + 1..n).map(|i| a[i * n + k]).collect();
            let q_col = &q[k + 1..n];
            let rows = &mut a[(k + 1) * n..n * n];
            let update = |(ii, row): (usize, &mut [f64])| {
                let vi = v_col[ii];
                let qi = q_col[ii];
                for jj in 0..m {
                    row[k + 1 + jj] -= vi * q_col[jj] + qi * v_col[jj];
                }
            };
            #[cfg(feature = "parallel")]
            {
                if m >= 256 {
                    rows.par_chunks_mut(n).enumerate().for_each(update);
                } else {
                    rows.chunks_mut(n).enumerate().for_each(update);
                }
            }
            #[cfg(not(feature = "parallel"))]
            rows.chunks_mut(n).enumerate().for_each(update);
        }
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    Tridiag {
        n,
        w: a.to_vec(),
        h: h_all,
        d,
        e,
    }
}

impl Tridiag {
    /// Map a T-eigenvector back to an eigenvector of the original matrix.
    pub(crate) fn back_transform(&self, vec: &mut [f64]) {
        let n = self.n;
        for k in (0..n.saturating_sub(2)).rev() {
            if self.h[k] == 0.0 {
                continue;
            }
            let mut dot = 0.0;
            for (i, vi) in vec.iter().enumerate().take(n).skip(k + 1) {
                dot += self.w[i * n + k] * vi;
            }
            let scale = dot / self.h[k];
            for (i, vi) in vec.iter_mut().enumerate().take(n).skip(k + 1) {
                *vi -= scale * self.w[i * n + k];
            }
        }
    }
}

/// All eigenvalues of a symmetric tridiagonal matrix by the implicit-shift
/// QL algorithm; destroys d and e, returns eigenvalues unsorted in d.
pub(crate) fn tql_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    assert!(e.len() >= n - 1);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigensolverNoConvergence(format!(
                    "QL exceeded 60 iterations at index {l} of {n}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}

/// Solve (T − shift·I) x = rhs with partial pivoting; rhs is overwritten.
fn solve_shifted_tridiag(d: &[f64], e: &[f64], shift: f64, rhs: &mut [f64]) {
    let n = d.len();
    let tiny = f64::EPSILON
        * d.iter()
            .map(|v| v.abs())
            .fold(1.0_f64, f64::max);
    let mut a: Vec<f64> = d.iter().map(|v| v - shift).collect();
    let mut b1 = vec![0.0; n];
    let mut b2 = vec![0.0; n];
    b1[..(n - 1)].copy_from_slice(&e[..(n - 1)]);
    for i in 0..n - 1 {
        // rows i (a, b1, b2) and i+1 (e[i], a[i+1], b1[i+1])
        let low = e[i];
        if low.abs() > a[i].abs() {
            let (t0, t1, t2, rt) = (a[i], b1[i], b2[i], rhs[i]);
            a[i] = low;
            b1[i] = a[i + 1];
            b2[i] = b1[i + 1];
            rhs[i] = rhs[i + 1];
            a[i + 1] = t1;
            b1[i + 1] = t2;
            rhs[i + 1] = rt;
            let factor = t0 / if a[i] == 0.0 { tiny } else { a[i] };
            a[i + 1] -= factor * b1[i];
            b1[i + 1] -= factor * b2[i];
            rhs[i + 1] -= factor * rhs[i];
        } else {
            let denom = if a[i] == 0.0 { tiny } else { a[i] };
            let factor = low / denom;
            a[i + 1] -= factor * b1[i];
            b1[i + 1] -= factor * b2[i];
            rhs[i + 1] -= factor * rhs[i];
        }
    }
    // back substitution
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= b1[i] * rhs[i + 1];
        }
        if i + 2 < n {
            acc -= b2[i] * rhs[i + 2];
        }
        let denom = if a[i] == 0.0 { tiny } else { a[i] };
        rhs[i] = acc / denom;
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

/// Eigenvector of the tridiagonal (d, e) at eigenvalue `lambda` by
/// inverse iteration.
pub(crate) fn tridiag_eigenvector(d: &[f64], e: &[f64], lambda: f64, seed: u64) -> Vec<f64> {
    let n = d.len();
    let mut state = seed ^ 0x6a09e667f3bcc909;
    let mut v: Vec<f64> = (0..n).map(|_| splitmix(&mut state)).collect();
    normalize(&mut v);
    for _ in 0..4 {
        solve_shifted_tridiag(d, e, lambda, &mut v);
        let growth = normalize(&mut v);
        if growth > 1.0 / (f64::EPSILON * 100.0) {
            break;
        }
    }
    v
}

/// Lowest `k` eigenvalues (ascending) of a real symmetric matrix, each
/// with a residual-checked eigenvector.
pub(crate) fn lowest_eigenpairs_sym(
    a: &[f64],
    n: usize,
    k: usize,
) -> Result<Vec<(f64, Vec<f64>)>> {
    let mut work = a.to_vec();
    let tri = tridiagonalize(&mut work, n);
    let mut d = tri.d.clone();
    let mut e = tri.e.clone();
    tql_eigenvalues(&mut d, &mut e)?;
    d.sort_unstable_by(|x, y| x.total_cmp(y));

    let mut out = Vec::with_capacity(k);
    for (idx, &lambda) in d.iter().take(k).enumerate() {
        let mut v = tridiag_eigenvector(&tri.d, &tri.e, lambda, 0x1000 + idx as u64);
        tri.back_transform(&mut v);
        normalize(&mut v);
        out.push((lambda, v));
    }
    Ok(out)
}

/// Lowest `k` distinct eigenvalues of a complex Hermitian matrix through
/// the doubled real embedding, with residual-checked complex eigenvectors.
pub(crate) fn lowest_eigenpairs_hermitian(
    a: &[Complex],
    n: usize,
    k: usize,
) -> Result<Vec<(f64, Vec<Complex>)>> {
    let all_real = a.iter().all(|z| z.im == 0.0);
    if all_real {
        let re: Vec<f64> = a.iter().map(|z| z.re).collect();
        let pairs = lowest_eigenpairs_sym(&re, n, k)?;
        return Ok(pairs
            .into_iter()
            .map(|(l, v)| (l, v.into_iter().map(Complex::real).collect()))
            .collect());
    }

    let m = 2 * n;
    let mut emb = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a[i * n + j];
            emb[i * m + j] = z.re;
            emb[i * m + (j + n)] = -z.im;
            emb[(i + n) * m + j] = z.im;
            emb[(i + n) * m + (j + n)] = z.re;
        }
    }

    let mut work = emb.clone();
    let tri = tridiagonalize(&mut work, m);
    let mut d = tri.d.clone();
    let mut e = tri.e.clone();
    tql_eigenvalues(&mut d, &mut e)?;
    d.sort_unstable_by(|x, y| x.total_cmp(y));

    // every eigenvalue is doubled by the embedding
    let anorm = d.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    let pair_tol = 1e-9 * (1.0 + anorm);
    let mut lowest = Vec::with_capacity(k);
    for t in 0..k {
        let (l0, l1) = (d[2 * t], d[2 * t + 1]);
        if (l1 - l0).abs() > pair_tol {
            return Err(Error::EigensolverNoConvergence(format!(
                "embedded spectrum failed to pair: {l0} vs {l1}"
            )));
        }
        lowest.push(0.5 * (l0 + l1));
    }

    let mut out = Vec::with_capacity(k);
    for (idx, &lambda) in lowest.iter().enumerate() {
        let mut v = tridiag_eigenvector(&tri.d, &tri.e, lambda, 0x2000 + idx as u64);
        tri.back_transform(&mut v);
        normalize(&mut v);
        let folded: Vec<Complex> = (0..n)
            .map(|i| Complex {
                re: v[i],
                im: v[i + n],
            })
            .collect();
        out.push((lambda, folded));
    }
    Ok(out)
}
