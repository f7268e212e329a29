//! Scalar root and extremum refinement.

/// Brent's method on a sign-change bracket. Returns None when the bracket
/// is invalid or the iteration cap is hit.
pub(crate) fn brent<F: Fn(f64) -> f64>(
    f: &F,
    a0: f64,
    b0: f64,
    fa0: f64,
    fb0: f64,
    xtol: f64,
    max_iter: usize,
) -> Option<f64> {
    let (mut a, mut b, mut fa, mut fb) = (a0, b0, fa0, fb0);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Some(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, falling back to secant
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let r0 = fa / fc;
                let r1 = fb / fc;
                p = s * (2.0 * xm * r0 * (r0 - r1) - (b - a) * (r1 - 1.0));
                q = (r0 - 1.0) * (r1 - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1 * xm.signum();
        }
        fb = f(b);
    }
    None
}

/// Plain bisection for a sign change of `f`; used on the secular
/// derivative to pin tangential extrema.
pub(crate) fn bisect<F: Fn(f64) -> f64>(f: &F, lo0: f64, hi0: f64, flo0: f64, xtol: f64) -> f64 {
    let (mut lo, mut hi, mut flo) = (lo0, hi0, flo0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < xtol || mid == lo || mid == hi {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn brent_finds_sin_root() {
        let f = |x: f64| x.sin();
        let root = brent(&f, 3.0, 3.3, f(3.0), f(3.3), 1e-13, 200).unwrap();
        assert!((root - PI).abs() < 1e-12);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        let f = |x: f64| x * x + 1.0;
        assert!(brent(&f, -1.0, 1.0, f(-1.0), f(1.0), 1e-13, 200).is_none());
    }

    #[test]
    fn bisect_pins_extremum() {
        // derivative of (x - 2)^2 changes sign at 2
        let g = |x: f64| 2.0 * (x - 2.0);
        let x = bisect(&g, 1.2, 2.9, g(1.2), 1e-13);
        assert!((x - 2.0).abs() < 1e-12);
    }
}
