//! Complete elliptic integrals by the arithmetic-geometric mean.
//!
//! Parameter convention: `m = k²`, where `k` is the modulus (for an ellipse,
//! its eccentricity).

use std::f64::consts::FRAC_PI_2;

const MAX_ITER: usize = 40;

/// Returns `(K(m), E(m))` for `m ∈ [0, 1)`.
///
/// AGM converges quadratically; the loop stops once `|a − b|` is below a
/// few ulps, which puts both integrals well below `1e-14` absolute error.
pub fn complete_k_e(m: f64) -> (f64, f64) {
    debug_assert!((0.0..1.0).contains(&m), "parameter m = {m} outside [0, 1)");
    if m == 0.0 {
        return (FRAC_PI_2, FRAC_PI_2);
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    let mut c = m.sqrt();
    // Σ 2^(n-1) c_n², starting with n = 0 weight 1/2
    let mut sum = 0.5 * c * c;
    let mut weight = 0.5_f64;
    for _ in 0..MAX_ITER {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = a_next;
        b = b_next;
        weight *= 2.0;
        sum += weight * c * c;
    }
    let k = FRAC_PI_2 / a;
    (k, k * (1.0 - sum))
}

/// Complete elliptic integral of the second kind, `E(m) = ∫₀^{π/2} √(1 − m sin²θ) dθ`.
///
/// Defined on `[0, 1]`; `E(1) = 1`.
pub fn complete_e(m: f64) -> f64 {
    if m >= 1.0 {
        return 1.0;
    }
    complete_k_e(m).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_limit() {
        assert_eq!(complete_e(0.0), PI / 2.0);
    }

    #[test]
    fn tabulated_values() {
        // Abramowitz & Stegun table 17.1
        assert!((complete_e(0.5) - 1.350_643_881_047_675_5).abs() < 1e-14);
        assert!((complete_e(0.75) - 1.211_056_027_568_459_5).abs() < 1e-14);
        assert!((complete_k_e(0.5).0 - 1.854_074_677_301_372).abs() < 1e-14);
    }

    #[test]
    fn approaches_one_near_degenerate_limit() {
        assert!((complete_e(1.0 - 1e-12) - 1.0).abs() < 1e-9);
        assert_eq!(complete_e(1.0), 1.0);
    }
}
