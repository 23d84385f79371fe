#![allow(dead_code)]

use gelfand_core::Partition;
use proptest::prelude::*;

/// Random partitions of size at most `max`.
pub fn partition_up_to(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| {
        proptest::collection::vec(1..=n.max(1), 0..=n).prop_map(move |mut parts| {
            let mut left = n;
            parts.retain_mut(|p| {
                if left == 0 {
                    return false;
                }
                *p = (*p).min(left);
                left -= *p;
                true
            });
            Partition::from_unsorted(parts)
        })
    })
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    (fa, fm, fb): (f64, f64, f64),
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, (fa, flm, fm), left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, (fm, frm, fb), right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, (fa, fm, fb), whole, tol, 50)
}

/// Integral split at the given sorted breakpoints, each piece to `tol`.
pub fn integrate_piecewise(f: &dyn Fn(f64) -> f64, points: &[f64], tol: f64) -> f64 {
    points.windows(2).map(|w| integrate(f, w[0], w[1], tol)).sum()
}
