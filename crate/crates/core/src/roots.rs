//! Bracketed scalar root finding.
//!
//! Newton steps are taken while they stay inside the current bracket; any
//! step that would leave it, or that fails to halve the bracket fast enough,
//! falls back to bisection. Convergence is therefore guaranteed for any
//! continuous function with a sign change on the initial bracket.

use crate::error::{domain, Result};

const MAX_ITER: usize = 200;

/// Stopping rule for [`newton_bisect`] and [`bisect`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Absolute width of the bracket at which iteration stops.
    pub x_abs: f64,
    /// Residual magnitude at which iteration stops.
    pub f_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            x_abs: 1e-14,
            f_abs: 0.0,
        }
    }
}

/// Finds a root of `f` in `[lo, hi]` using safeguarded Newton iteration.
///
/// `f` returns the value and derivative at a point. The endpoints must
/// bracket a sign change (a zero at either endpoint is accepted).
pub fn newton_bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(domain(
            "bracket",
            format!("no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})"),
        ));
    }
    // orient so that f(lo) < 0 < f(hi)
    if f_lo > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }

    let mut x = 0.5 * (lo + hi);
    let mut prev_step = (hi - lo).abs();
    let mut step = prev_step;
    for _ in 0..MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == 0.0 || fx.abs() <= tol.f_abs {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= tol.x_abs {
            return Ok(0.5 * (lo + hi));
        }

        let newton = x - fx / dfx;
        // reject Newton when it leaves the bracket or converges slower than bisection
        let usable = newton.is_finite()
            && (newton - lo) * (newton - hi) < 0.0
            && (2.0 * fx).abs() <= (prev_step * dfx).abs();
        prev_step = step;
        let next = if usable { newton } else { 0.5 * (lo + hi) };
        step = (next - x).abs();
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Ok(x)
}

/// Plain bisection for functions without a convenient derivative.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(domain(
            "bracket",
            format!("no sign change on [{lo}, {hi}] (f = {f_lo}, {f_hi})"),
        ));
    }
    if f_lo > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= tol.x_abs || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 || fm.abs() <= tol.f_abs {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
