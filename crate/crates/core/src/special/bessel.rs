//! Modified Bessel function of the first kind, order one.

use std::f64::consts::PI;

use super::SeriesControl;
use crate::error::{CasimirError, Result};

/// Above this argument the asymptotic expansion of `e^{-z} I₁(z)` is used.
const ASYMPTOTIC_FROM: f64 = 30.0;

/// `I₁(z)` for `z ≥ 0`. Overflows to `+∞` beyond `z ≈ 713`; use
/// [`bessel_i1_scaled`] when the result is multiplied by a decaying exponential.
pub fn bessel_i1(z: f64, ctrl: &SeriesControl) -> Result<f64> {
    check(z)?;
    if z <= ASYMPTOTIC_FROM {
        power_series(z, ctrl)
    } else {
        Ok(asymptotic_scaled(z) * z.exp())
    }
}

/// `e^{-z} I₁(z)` for `z ≥ 0`.
pub fn bessel_i1_scaled(z: f64, ctrl: &SeriesControl) -> Result<f64> {
    check(z)?;
    if z <= ASYMPTOTIC_FROM {
        Ok(power_series(z, ctrl)? * (-z).exp())
    } else {
        Ok(asymptotic_scaled(z))
    }
}

fn check(z: f64) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(CasimirError::domain("bessel_i1", format!("argument {z} must be finite and non-negative")));
    }
    Ok(())
}

/// Σ_{k≥0} (z/2)^{2k+1} / (k! (k+1)!)
fn power_series(z: f64, ctrl: &SeriesControl) -> Result<f64> {
    if z == 0.0 {
        return Ok(0.0);
    }
    let half = 0.5 * z;
    let q = half * half;
    let mut term = half;
    let mut sum = half;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        let ratio = q / ((kf + 1.0) * (kf + 2.0));
        term *= ratio;
        sum += term;
        if ratio < 1.0 && term * ratio / (1.0 - ratio) <= ctrl.rel_tol * sum {
            return Ok(sum);
        }
    }
    Err(CasimirError::Convergence {
        what: "Bessel I1 series",
        partial: sum,
        terms: ctrl.max_terms,
    })
}

/// Hankel expansion e^{-z} I₁(z) ~ (2πz)^{-1/2} Σ_k (-1)^k Π_j (4 - (2j-1)²) / (k! (8z)^k).
fn asymptotic_scaled(z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (4.0 - odd * odd) / (k as f64 * 8.0 * z);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * z).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctrl() -> SeriesControl {
        SeriesControl {
            rel_tol: 1e-16,
            ..SeriesControl::default()
        }
    }

    #[test]
    fn zero_and_small_argument() {
        assert_eq!(bessel_i1(0.0, &ctrl()).unwrap(), 0.0);
        let z = 1e-6;
        let r = bessel_i1(z, &ctrl()).unwrap() / z;
        assert!((r - 0.5).abs() < 1e-12);
        // z/2 + z³/16 + z⁵/384
        let z = 1e-2;
        let v = bessel_i1(z, &ctrl()).unwrap();
        assert!((v - (z / 2.0 + z.powi(3) / 16.0 + z.powi(5) / 384.0)).abs() < 1e-15 * v);
    }

    #[test]
    fn value_at_one() {
        // Direct summation of the defining series to 1e-16 (15 terms is ample).
        let mut expected = 0.0;
        let mut fact_k = 1.0;
        for k in 0..15 {
            if k > 0 {
                fact_k *= k as f64;
            }
            expected += 0.5f64.powi(2 * k + 1) / (fact_k * fact_k * (k as f64 + 1.0));
        }
        assert!((expected - 0.565_159).abs() < 1e-6);
        assert!((bessel_i1(1.0, &ctrl()).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_switch() {
        let z = ASYMPTOTIC_FROM;
        let series = power_series(z, &ctrl()).unwrap() * (-z).exp();
        let asym = asymptotic_scaled(z);
        assert!(((series - asym) / asym).abs() < 1e-14);
        let z = 45.0;
        let series = power_series(z, &ctrl()).unwrap() * (-z).exp();
        assert!(((series - asymptotic_scaled(z)) / series).abs() < 1e-14);
    }

    #[test]
    fn scaled_large_argument_does_not_overflow() {
        let s = bessel_i1_scaled(1e4, &ctrl()).unwrap();
        let leading = 1.0 / (2.0 * PI * 1e4).sqrt();
        assert!((s / leading - 1.0).abs() < 1e-3);
    }

    #[test]
    fn negative_argument_rejected() {
        assert!(bessel_i1(-1.0, &ctrl()).is_err());
    }

    proptest! {
        #[test]
        fn bounded_below_by_half_argument(z in 1e-8f64..50.0) {
            let v = bessel_i1(z, &ctrl()).unwrap();
            prop_assert!(v >= 0.5 * z);
        }
    }
}
