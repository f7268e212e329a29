//! Grid scan of the secular function for root brackets.

use crate::spectral::{Branch, SecularEval};

/// Candidate root interval produced by the scan.
#[derive(Clone, Copy, Debug)]
pub struct Bracket {
    pub branch: Branch,
    pub lo: f64,
    pub hi: f64,
    pub kind: BracketKind,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketKind {
    /// The secular function changes sign across the interval.
    SignChange,
    /// The secular function attains a small same-sign local minimum of
    /// magnitude inside the interval: a tangency (double root) candidate.
    Tangential,
}

/// Neighborhood of x = 0 excluded from scanning; the zero eigenvalue is
/// decided analytically by the zero-mode condition.
pub(crate) const ZERO_EXCLUSION: f64 = 1e-4;

/// Scan one branch on [ZERO_EXCLUSION, t_max] with the given step.
///
/// `t` is x on the positive branch and κ on the negative branch (where the
/// e^{−κ}-rescaled secular is used; same sign pattern).
pub(crate) fn scan_branch(
    eval: &SecularEval,
    branch: Branch,
    t_max: f64,
    step: f64,
    tangent_rel: f64,
) -> Vec<Bracket> {
    assert!(step > 0.0, "grid step must be positive");
    let t_min = ZERO_EXCLUSION;
    if t_max <= t_min {
        return Vec::new();
    }
    let f = |t: f64| match branch {
        Branch::Positive => eval.positive(t),
        Branch::Negative => eval.negative_scaled(t),
        Branch::Zero => unreachable!("zero branch is never scanned"),
    };
    let n = ((t_max - t_min) / step).ceil().max(1.0) as usize;
    let ts: Vec<f64> = (0..=n)
        .map(|i| t_min + (t_max - t_min) * i as f64 / n as f64)
        .collect();
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect();

    let mut out = Vec::new();
    for i in 0..n {
        let (s0, s1) = (vals[i], vals[i + 1]);
        if s0 == 0.0 {
            // node exactly on a root: synthesize a minimal bracket
            let lo = if i > 0 { ts[i - 1] } else { ts[i] };
            out.push(Bracket {
                branch,
                lo,
                hi: ts[i + 1],
                kind: if i > 0 && vals[i - 1].signum() != s1.signum() {
                    BracketKind::SignChange
                } else {
                    BracketKind::Tangential
                },
            });
            continue;
        }
        if s0.signum() != s1.signum() && s1 != 0.0 {
            out.push(Bracket {
                branch,
                lo: ts[i],
                hi: ts[i + 1],
                kind: BracketKind::SignChange,
            });
        }
    }

    // same-sign local minima of |S| below the tangency threshold
    for i in 1..n {
        let (prev, here, next) = (vals[i - 1], vals[i], vals[i + 1]);
        if here == 0.0 || prev == 0.0 || next == 0.0 {
            continue;
        }
        let same_sign = prev.signum() == here.signum() && here.signum() == next.signum();
        if same_sign
            && here.abs() <= prev.abs()
            && here.abs() <= next.abs()
            && here.abs() < prev.abs().max(next.abs())
            && here.abs() < tangent_rel * eval.envelope(ts[i])
        {
            out.push(Bracket {
                branch,
                lo: ts[i - 1],
                hi: ts[i + 1],
                kind: BracketKind::Tangential,
            });
        }
    }
    out.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    out
}
