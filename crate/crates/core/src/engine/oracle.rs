//! Brute-force PFA oracles: the Lifshitz plate-plate pressure integrated over
//! the true lens profile, with the explicit `n` series and no expansion in
//! the small parameters `a/B` or `a/H`.
//!
//! With `w = 2nqa` the force reads
//! `F = −(k_B T L/(4π a³)) Σ'_l Σ_n n⁻³ ∫_{nζ_l}^∞ w² R_n(w/n) e^{−w} P(w) dw`,
//! where `R_n = r_TM^{2n} + r_TE^{2n}` and `P(w) = ∫ e^{−w(z(x)−a)/a} dx` runs
//! over one half of the lens surface.

use std::f64::consts::PI;

use super::spectral::{rescale_partial, spectral_sum, v_integral, QUIET_TERMS};
use super::{rotation_factor, ForceResult, QuadratureSpec};
use crate::dielectric::PermittivityModel;
use crate::error::{CasimirError, Result};
use crate::geometry::{validate_geometry, Environment, LensGeometry, LensShape, Semiaxes};
use crate::quad::{integrate_with_breakpoints, QuadResult, Tolerance};

/// Breakpoints in units of the Gaussian width of the profile integrand.
const WIDTHS: [f64; 7] = [0.5, 1.0, 2.0, 3.0, 4.5, 6.5, 9.0];

fn gaussian_points(width: f64, end: f64) -> Vec<f64> {
    let mut points = vec![0.0];
    points.extend(WIDTHS.iter().map(|k| k * width).filter(|&x| x < end));
    points.push(end);
    points
}

/// `∫₀^d exp(−w (z(x) − a)/a) dx` for the elliptic profile
/// `z − a = B − √(B² − B²x²/A²)`, written without cancellation.
fn symmetric_profile(s: Semiaxes, half_width: f64, a: f64, w: f64, tol: Tolerance) -> Result<f64> {
    let (big_a, big_b) = (s.lateral, s.normal);
    let width = big_a * (2.0 * a / (big_b * w)).sqrt();
    let r = integrate_with_breakpoints(
        |x| {
            let t = x / big_a;
            let rise = big_b * t * t / (1.0 + (1.0 - t * t).max(0.0).sqrt());
            Ok((-w * rise / a).exp())
        },
        &gaussian_points(width, half_width),
        tol,
    )?;
    Ok(r.value)
}

/// Rotated lens: the surface measure at height `z − a = u²` above the lowest
/// point is `(AB/H²) · 2(H − u²)/√(2H − u²) du`, integrated up to the thickness.
fn rotated_profile(s: Semiaxes, height: f64, thickness: f64, a: f64, w: f64, tol: Tolerance) -> Result<f64> {
    let k = s.lateral * s.normal / (height * height);
    let width = (a / w).sqrt();
    let r = integrate_with_breakpoints(
        |u| {
            let u2 = u * u;
            Ok(2.0 * (height - u2) * (-w * u2 / a).exp() / (2.0 * height - u2).sqrt())
        },
        &gaussian_points(width, thickness.sqrt()),
        tol,
    )?;
    Ok(k * r.value)
}

/// `Σ_n n⁻³ ∫ w² R_n(w/n) e^{−w} P(w) dw` at one frequency.
fn n_series<P>(
    mat: &PermittivityModel,
    zeta: f64,
    a: f64,
    q: &QuadratureSpec,
    rel: f64,
    profile: &P,
) -> Result<QuadResult>
where
    P: Fn(f64, Tolerance) -> Result<f64>,
{
    let response = mat.response(zeta, a)?;
    let tol = q.tolerance(rel);
    let profile_tol = q.tolerance(rel * 0.1);
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut quiet = 0;
    let mut evaluations = 0;
    for n in 1..=q.n_max {
        let nf = n as f64;
        let lower = nf * zeta;
        let r = v_integral(lower, q.v_span, tol, |w| {
            let rc = response.at(w / nf);
            let rn = (nf * rc.tm_log_sq()).exp() + (nf * rc.te_log_sq()).exp();
            Ok(w * w * rn * (-w).exp() * profile(w, profile_tol)?)
        })?;
        evaluations += r.evaluations;
        let term = r.value / (nf * nf * nf);
        sum += term;
        err += r.abs_error / (nf * nf * nf);
        if term.abs() <= rel * sum.abs() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                if zeta == 0.0 {
                    // At ζ = 0 the terms fall off as n⁻³; add the remainder of that series.
                    let tail = term * (nf / 2.0 - 0.5 + 0.25 / nf);
                    sum += tail;
                    err += 1e-3 * tail.abs();
                }
                return Ok(QuadResult {
                    value: sum,
                    abs_error: err,
                    evaluations,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(CasimirError::Convergence {
        what: "oracle n-series",
        partial: sum,
        terms: q.n_max,
    })
}

fn run<P>(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec, profile: P) -> Result<ForceResult>
where
    P: Fn(f64, Tolerance) -> Result<f64>,
{
    validate_geometry(geom, env)?;
    mat.validate()?;
    q.validate()?;
    if env.is_zero_temperature() {
        return Err(CasimirError::invalid("the direct oracles need T > 0"));
    }
    let a = env.separation;
    let factor = -geom.length / (4.0 * PI * a.powi(3));
    let s = spectral_sum(env, q, |zeta, rel| n_series(mat, zeta, a, q, rel, &profile))
        .map_err(|e| rescale_partial(e, factor, "direct oracle"))?;
    Ok(ForceResult {
        value: factor * s.value,
        est_abs_error: factor.abs() * s.abs_error,
        terms_used: s.terms,
        mode: s.mode,
    })
}

/// Force on a symmetric elliptic lens from the unexpanded PFA integral over
/// the finite lens width. Used to bound the error of [`super::casimir_force`].
pub fn direct_pfa_force_oracle(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    let s = match geom.shape {
        LensShape::SymmetricElliptic(s) => s,
        _ => return Err(CasimirError::invalid("the direct oracle takes a symmetric elliptic lens")),
    };
    let (d, a) = (geom.half_width, env.separation);
    run(geom, env, mat, q, move |w, tol| symmetric_profile(s, d, a, w, tol))
}

/// Force on a rotated lens from the unexpanded height integral.
pub fn rotated_direct_oracle(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    let (s, phi) = match geom.shape {
        LensShape::Rotated { semiaxes, phi } => (semiaxes, phi),
        _ => return Err(CasimirError::invalid("the rotated oracle takes a rotated lens")),
    };
    let height = rotation_factor(s.lateral, s.normal, phi).h;
    let (h, a) = (geom.thickness, env.separation);
    run(geom, env, mat, q, move |w, tol| rotated_profile(s, height, h, a, w, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_profile_gaussian_limit() {
        // For w ≫ a/B the profile integral is A√(πa/(2Bw)) · (1 − 3a/(8Bw) + …).
        let s = Semiaxes::new(120e-6, 100e-6);
        let a = 1e-7;
        let w = 3.0;
        let got = symmetric_profile(s, 100e-6, a, w, Tolerance::relative(1e-12)).unwrap();
        let leading = s.lateral * (PI * a / (2.0 * s.normal * w)).sqrt();
        let expected = leading * (1.0 - 3.0 * a / (8.0 * s.normal * w));
        assert!((got / expected - 1.0).abs() < 1e-6, "{got} {expected}");
    }

    #[test]
    fn rotated_profile_matches_symmetric_at_zero_angle() {
        let s = Semiaxes::new(130e-6, 100e-6);
        let h = 40e-6;
        let d = crate::geometry::half_width_for_thickness(s, h);
        let a = 2e-7;
        for &w in &[0.01, 0.5, 4.0, 30.0] {
            let x = symmetric_profile(s, d, a, w, Tolerance::relative(1e-13)).unwrap();
            let z = rotated_profile(s, s.normal, h, a, w, Tolerance::relative(1e-13)).unwrap();
            assert!((x / z - 1.0).abs() < 1e-10, "w={w}: {x} {z}");
        }
    }

    #[test]
    fn rejects_zero_temperature_and_wrong_variant() {
        let g = LensGeometry::symmetric(Semiaxes::circular(1e-4), 5e-5, 1e-3);
        let q = QuadratureSpec::default();
        let m = PermittivityModel::IdealMetal;
        assert!(direct_pfa_force_oracle(&g, &Environment::new(1e-6, 0.0), &m, &q).is_err());
        assert!(rotated_direct_oracle(&g, &Environment::new(1e-6, 300.0), &m, &q).is_err());
    }
}
