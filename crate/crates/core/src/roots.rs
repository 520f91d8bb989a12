//! Bracketed bisection for monotone scalar functions.

use crate::error::{Error, Result};

pub const MAX_BISECTION_ITERATIONS: usize = 200;

/// Finds `x` in `[lo, hi]` with `|f(x) - target| <= tol`, for `f`
/// strictly increasing on the bracket with `f(lo) <= target <= f(hi)`.
///
/// While the bracket spans more than a factor of two the midpoint is taken
/// geometrically, so brackets reaching down to tiny densities still
/// converge within the iteration cap. If the bracket collapses to adjacent
/// floats first, the endpoint with the smaller residual is returned.
pub fn bisect_increasing(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    tol: f64,
) -> Result<f64> {
    debug_assert!(lo <= hi);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if (f_lo - target).abs() <= tol {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= tol {
        return Ok(hi);
    }
    if !(f_lo < target && target < f_hi) {
        return Err(Error::NoRoot { target });
    }
    let (mut r_lo, mut r_hi) = (target - f_lo, f_hi - target);
    for _ in 0..MAX_BISECTION_ITERATIONS {
        let mid = if lo > 0.0 && hi > 2.0 * lo {
            (lo * hi).sqrt()
        } else {
            lo + 0.5 * (hi - lo)
        };
        if mid <= lo || mid >= hi {
            return Ok(if r_lo <= r_hi { lo } else { hi });
        }
        let fm = f(mid);
        if (fm - target).abs() <= tol {
            return Ok(mid);
        }
        if fm < target {
            lo = mid;
            r_lo = target - fm;
        } else {
            hi = mid;
            r_hi = fm - target;
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_BISECTION_ITERATIONS,
    })
}
