//! Frequency summation shared by every kernel: the primed Matsubara sum at
//! `T > 0`, or the continuous `ζ` integral at `T = 0`.

use std::f64::consts::PI;

use super::{ForceMode, QuadratureSpec};
use crate::constants::CODATA_2018;
use crate::dielectric::PermittivityModel;
use crate::error::{CasimirError, Result};
use crate::geometry::Environment;
use crate::quad::{integrate_with_breakpoints, QuadResult, Tolerance};
use crate::special::{polylog_exp, SeriesControl};

/// Number of consecutive negligible terms that ends a series.
pub(crate) const QUIET_TERMS: usize = 3;

const ZETA_BREAKS: [f64; 7] = [0.0, 0.1, 1.0, 4.0, 10.0, 25.0, 80.0];

/// `k_B T Σ'_l K(ζ_l)` or, at `T = 0`, `(ħc/4πa) ∫₀^∞ K(ζ) dζ`, in joules.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SpectralSum {
    pub value: f64,
    pub abs_error: f64,
    pub terms: usize,
    pub mode: ForceMode,
}

/// Sums `kernel(ζ, inner_rel_tol)` over frequencies. Terms are consumed in
/// ascending `l`, so the reduction order never depends on scheduling.
pub(crate) fn spectral_sum<K>(env: &Environment, spec: &QuadratureSpec, mut kernel: K) -> Result<SpectralSum>
where
    K: FnMut(f64, f64) -> Result<QuadResult>,
{
    let inner = spec.rel_tol * 0.1;
    if env.is_zero_temperature() {
        let scale = CODATA_2018.hbar_c() / (4.0 * PI * env.separation);
        let top = ZETA_BREAKS[ZETA_BREAKS.len() - 1].max(spec.v_span);
        let mut points: Vec<f64> = ZETA_BREAKS.iter().copied().filter(|&z| z < top).collect();
        points.push(top);
        let mut inner_error = 0.0;
        let mut calls = 0usize;
        let r = integrate_with_breakpoints(
            |z| {
                calls += 1;
                let k = kernel(z, inner)?;
                inner_error += k.abs_error;
                Ok(k.value)
            },
            &points,
            spec.tolerance(spec.rel_tol),
        )
        .map_err(|e| rescale_partial(e, scale, "zero-temperature frequency integral"))?;
        // Inner errors accumulate over all nodes; weight them by the mean node spacing.
        let mean_weight = (top - points[0]) / calls.max(1) as f64;
        return Ok(SpectralSum {
            value: scale * r.value,
            abs_error: scale * (r.abs_error + inner_error * mean_weight),
            terms: calls,
            mode: ForceMode::ZeroT,
        });
    }

    let kt = CODATA_2018.k_b * env.temperature;
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut quiet = 0;
    for l in 0..=spec.l_max {
        let zeta = env.matsubara(l).zeta;
        let weight = if l == 0 { 0.5 } else { 1.0 };
        let k = kernel(zeta, inner).map_err(|e| match e {
            CasimirError::Convergence { partial, .. } => CasimirError::Convergence {
                what: "Matsubara sum",
                partial: kt * (sum + weight * partial),
                terms: l as usize,
            },
            other => other,
        })?;
        let term = weight * k.value;
        sum += term;
        err += weight * k.abs_error;
        if l > 0 && term.abs() <= inner * sum.abs() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(SpectralSum {
                    value: kt * sum,
                    abs_error: kt * (err + QUIET_TERMS as f64 * term.abs()),
                    terms: l as usize + 1,
                    mode: ForceMode::FiniteT,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(CasimirError::Convergence {
        what: "Matsubara sum",
        partial: kt * sum,
        terms: spec.l_max as usize + 1,
    })
}

/// Multiplies the partial value of a convergence failure by `factor`.
pub(crate) fn rescale_partial(e: CasimirError, factor: f64, what: &'static str) -> CasimirError {
    match e {
        CasimirError::Convergence { partial, terms, .. } => CasimirError::Convergence {
            what,
            partial: partial * factor,
            terms,
        },
        other => other,
    }
}

/// `∫_ζ^{ζ+span} f(v) dv` after `v = ζ + u²`, which spreads the peak near the
/// lower limit and removes integrable `v → 0` behaviour at `ζ = 0`.
pub(crate) fn v_integral<F>(zeta: f64, span: f64, tol: Tolerance, mut f: F) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let top = span.sqrt();
    let mut points: Vec<f64> = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.5, 7.0, 9.0, 12.0]
        .iter()
        .copied()
        .filter(|&u| u < top)
        .collect();
    points.push(top);
    integrate_with_breakpoints(
        |u| {
            let v = zeta + u * u;
            if v == 0.0 {
                return Ok(0.0);
            }
            Ok(2.0 * u * f(v)?)
        },
        &points,
        tol,
    )
}

/// The two polylogarithmic kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kernel {
    /// `v^{3/2} [Li_{1/2}(r_TM² e^{-v}) + Li_{1/2}(r_TE² e^{-v})]`
    Force,
    /// `v^{5/2} [Li_{-1/2}(r_TM² e^{-v}) + Li_{-1/2}(r_TE² e^{-v})]`
    Gradient,
}

impl Kernel {
    fn order(self) -> f64 {
        match self {
            Kernel::Force => 0.5,
            Kernel::Gradient => -0.5,
        }
    }

    fn power(self, v: f64) -> f64 {
        match self {
            Kernel::Force => v * v.sqrt(),
            Kernel::Gradient => v * v * v.sqrt(),
        }
    }
}

/// `∫_ζ^∞` of the chosen kernel at one frequency.
pub(crate) fn polylog_kernel(
    kind: Kernel,
    model: &PermittivityModel,
    zeta: f64,
    separation: f64,
    spec: &QuadratureSpec,
    rel: f64,
) -> Result<QuadResult> {
    let response = model.response(zeta, separation)?;
    let ctrl = spec.series_control();
    let order = kind.order();
    v_integral(zeta, spec.v_span, spec.tolerance(rel), |v| {
        let r = response.at(v);
        let tm = polylog_exp(order, (r.tm_log_sq() - v).min(0.0), &ctrl)?;
        let te = polylog_exp(order, (r.te_log_sq() - v).min(0.0), &ctrl)?;
        Ok(kind.power(v) * (tm + te))
    })
}

impl QuadratureSpec {
    pub(crate) fn tolerance(&self, rel: f64) -> Tolerance {
        Tolerance {
            rel,
            abs: 0.0,
            max_intervals: 4000,
        }
    }

    pub(crate) fn series_control(&self) -> SeriesControl {
        // Series are cheap next to the quadratures; keep them at full precision.
        SeriesControl {
            rel_tol: 1e-15,
            max_terms: self.n_max,
        }
    }
}
