//! Bracketing routines for the numeric oracles.

use std::cmp::Ordering;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimises a unimodal function on `[lo, hi]` to width `tol`.
///
/// `cmp(x1, x2)` compares `f(x1)` with `f(x2)`; callers that can evaluate
/// the difference without cancellation get far more accuracy than from
/// comparing two computed values.
pub fn golden_section_min(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    cmp: impl Fn(f64, f64) -> Ordering,
) -> f64 {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    for _ in 0..400 {
        if hi - lo <= tol {
            break;
        }
        if cmp(x1, x2) == Ordering::Greater {
            lo = x1;
            x1 = x2;
            x2 = lo + INV_PHI * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - INV_PHI * (hi - lo);
        }
    }
    0.5 * (lo + hi)
}

/// A root of `f` in `[lo, hi]` by bisection; `None` without a sign change.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
