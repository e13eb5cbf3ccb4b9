//! Real polylogarithm `Li_s(z) = Σ_{n≥1} zⁿ / nˢ` for `|z| < 1`.
//!
//! Small arguments are summed directly. For `z > 1/2` the first
//! [`EM_SPLIT`]` - 1` terms are summed and the remainder is replaced by its
//! Euler–Maclaurin expansion, whose integral part is an upper incomplete
//! gamma function in closed form for half-integer orders. This keeps the cost
//! bounded as `z → 1⁻`, where `Li_{1/2}` and `Li_{-1/2}` diverge.

use std::f64::consts::PI;

use super::SeriesControl;
use crate::error::{CasimirError, Result};

const EM_SPLIT: usize = 32;
const EM_THRESHOLD: f64 = -std::f64::consts::LN_2;

/// B_{2k} / (2k)! for k = 1..=6.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// `Li_s(z)` for real `z` with `|z| < 1` (or `z = 1` when `s > 1`).
pub fn polylog(order: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !z.is_finite() || z.abs() > 1.0 || (z.abs() == 1.0 && !(order > 1.0 && z == 1.0)) {
        return Err(CasimirError::domain(
            "polylog",
            format!("argument {z} outside the unit disc for order {order}"),
        ));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z < 0.0 {
        // Li_s(-x) = 2^{1-s} Li_s(x²) - Li_s(x)
        let x = -z;
        let even = polylog(order, x * x, ctrl)?;
        let all = polylog(order, x, ctrl)?;
        return Ok((1.0 - order).exp2() * even - all);
    }
    polylog_exp(order, z.ln(), ctrl)
}

/// `Li_s(e^μ)` for `μ ≤ 0`. Passing the logarithm directly avoids the
/// cancellation in `ln(z)` when the caller already knows `ln z` exactly.
/// `μ = -∞` yields 0.
pub fn polylog_exp(order: f64, log_z: f64, ctrl: &SeriesControl) -> Result<f64> {
    if log_z.is_nan() || log_z > 0.0 {
        return Err(CasimirError::domain(
            "polylog",
            format!("log-argument {log_z} must be non-positive"),
        ));
    }
    if log_z == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if log_z == 0.0 && order <= 1.0 {
        return Err(CasimirError::domain(
            "polylog",
            format!("Li_{order}(1) diverges"),
        ));
    }
    if log_z < EM_THRESHOLD || !supports_euler_maclaurin(order, log_z) {
        return direct_sum(order, log_z, ctrl);
    }
    Ok(euler_maclaurin(order, log_z))
}

fn supports_euler_maclaurin(order: f64, log_z: f64) -> bool {
    (log_z == 0.0 && order > 1.0) || is_half_integer(order)
}

fn is_half_integer(s: f64) -> bool {
    let twice = 2.0 * s;
    twice == twice.round() && (twice as i64).rem_euclid(2) == 1 && s.abs() < 40.0
}

/// `n^{-s}`, avoiding `powf` for the two orders the force kernels use.
#[inline]
fn inv_pow(n: f64, s: f64) -> f64 {
    if s == 0.5 {
        1.0 / n.sqrt()
    } else if s == -0.5 {
        n.sqrt()
    } else {
        n.powf(-s)
    }
}

fn direct_sum(order: f64, log_z: f64, ctrl: &SeriesControl) -> Result<f64> {
    let z = log_z.exp();
    let mut sum = 0.0;
    let mut power = 1.0;
    for n in 1..=ctrl.max_terms {
        power *= z;
        let nf = n as f64;
        let term = power * inv_pow(nf, order);
        sum += term;
        // Bound the remaining geometric-like tail by its leading ratio.
        let growth = ((nf + 1.0) / nf).powf((-order).max(0.0));
        let ratio = z * growth;
        if ratio < 1.0 {
            let tail = term * ratio / (1.0 - ratio);
            if tail <= ctrl.rel_tol * sum.abs() {
                return Ok(sum);
            }
        }
        if term == 0.0 {
            return Ok(sum);
        }
    }
    Err(CasimirError::Convergence {
        what: "polylog series",
        partial: sum,
        terms: ctrl.max_terms,
    })
}

/// Upper incomplete gamma Γ(a, x) for half-integer `a` and `x > 0`, built
/// from Γ(1/2, x) = √π erfc(√x) by recurrence.
fn upper_gamma_half_integer(a: f64, x: f64) -> f64 {
    let sqrt_x = x.sqrt();
    let mut current_a = 0.5;
    let mut value = PI.sqrt() * libm::erfc(sqrt_x);
    let ex = (-x).exp();
    while current_a < a - 0.25 {
        // Γ(a+1, x) = a Γ(a, x) + x^a e^{-x}
        value = current_a * value + x.powf(current_a) * ex;
        current_a += 1.0;
    }
    while current_a > a + 0.25 {
        // Γ(a-1, x) = (Γ(a, x) - x^{a-1} e^{-x}) / (a - 1)
        let lower = current_a - 1.0;
        value = (value - x.powf(lower) * ex) / lower;
        current_a = lower;
    }
    value
}

fn euler_maclaurin(order: f64, log_z: f64) -> f64 {
    let mu = log_z;
    let n0 = EM_SPLIT as f64;

    let z = mu.exp();
    let mut head = 0.0;
    let mut power = 1.0;
    for n in 1..EM_SPLIT {
        power *= z;
        head += power * inv_pow(n as f64, order);
    }

    // ∫_N^∞ e^{μx} x^{-s} dx
    let integral = if mu == 0.0 {
        n0.powf(1.0 - order) / (order - 1.0)
    } else {
        let x = -mu * n0;
        (-mu).powf(order - 1.0) * upper_gamma_half_integer(1.0 - order, x)
    };

    // Derivatives of f(x) = e^{μx} x^{-s} at N via Leibniz' rule.
    const MAX_DERIV: usize = 11;
    let mut power_derivs = [0.0; MAX_DERIV + 1];
    let mut falling = 1.0;
    for (i, slot) in power_derivs.iter_mut().enumerate() {
        *slot = falling * n0.powf(-order - i as f64);
        falling *= -order - i as f64;
    }
    let e = (mu * n0).exp();
    let deriv = |j: usize| -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=j {
            acc += binom * mu.powi((j - i) as i32) * power_derivs[i];
            binom = binom * (j - i) as f64 / (i + 1) as f64;
        }
        e * acc
    };

    let mut tail = integral + 0.5 * deriv(0);
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail -= coeff * deriv(2 * k + 1);
    }
    head + tail
}
