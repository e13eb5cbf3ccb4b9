//! Resonance shift of a micromachined oscillator carrying the lens.
//!
//! With `a(t) = a + A_z cos ω_r t` the squared frequency shifts by
//! `ω_r² − ω₀² = −(C/(πA_z)) ∫₀^{2π} cos θ F(a + A_z cos θ) dθ`. The `θ`
//! integral of each exponential `e^{−2nq(a + A_z cos θ)}` in the Lifshitz
//! force is `−2π e^{−2nqa} I₁(2nqA_z)`, which gives the Bessel-series kernel
//! evaluated here. Both forms are implemented: the series as the production
//! path and the `θ` quadrature as its oracle.

use std::f64::consts::PI;

use crate::dielectric::{PermittivityModel, ReflectionPair};
use crate::engine::spectral::{rescale_partial, spectral_sum, v_integral};
use crate::engine::{casimir_force, casimir_gradient, ForceResult, QuadratureSpec};
use crate::error::{CasimirError, Result};
use crate::geometry::{validate_geometry, Environment, LensGeometry, LensShape};
use crate::quad::{integrate_with_breakpoints, Tolerance};
use crate::special::{bessel_i1_scaled, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Natural angular frequency `ω₀`, rad/s.
    pub omega0: f64,
    /// Coupling `C = b²/I`, 1/kg.
    pub coupling: f64,
    /// Oscillation amplitude `A_z`, m.
    pub amplitude: f64,
    /// Lever arm `b`, m, when `C` was derived from it.
    pub lever_arm: Option<f64>,
    /// Moment of inertia `I`, kg·m², when `C` was derived from it.
    pub inertia: Option<f64>,
}

impl OscillatorParams {
    pub fn new(omega0: f64, coupling: f64, amplitude: f64) -> Self {
        OscillatorParams {
            omega0,
            coupling,
            amplitude,
            lever_arm: None,
            inertia: None,
        }
    }

    /// Derives `C = b²/I`.
    pub fn from_lever_arm(omega0: f64, lever_arm: f64, inertia: f64, amplitude: f64) -> Self {
        OscillatorParams {
            omega0,
            coupling: lever_arm * lever_arm / inertia,
            amplitude,
            lever_arm: Some(lever_arm),
            inertia: Some(inertia),
        }
    }

    pub fn with_amplitude(self, amplitude: f64) -> Self {
        OscillatorParams { amplitude, ..self }
    }

    /// `A_z / a`.
    pub fn relative_amplitude(&self, separation: f64) -> f64 {
        self.amplitude / separation
    }

    pub fn validate(&self, separation: f64) -> Result<()> {
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return Err(CasimirError::invalid(format!("natural frequency must be positive, got {}", self.omega0)));
        }
        if !(self.coupling > 0.0) || !self.coupling.is_finite() {
            return Err(CasimirError::invalid(format!("coupling constant must be positive, got {}", self.coupling)));
        }
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return Err(CasimirError::invalid(format!("amplitude must be positive, got {}", self.amplitude)));
        }
        if self.amplitude >= separation {
            return Err(CasimirError::domain(
                "oscillator",
                format!("amplitude {:e} m reaches the plate at separation {:e} m", self.amplitude, separation),
            ));
        }
        if let (Some(b), Some(i)) = (self.lever_arm, self.inertia) {
            let c = b * b / i;
            if (c - self.coupling).abs() > 4.0 * f64::EPSILON * c {
                return Err(CasimirError::invalid(format!("coupling {} differs from b²/I = {c}", self.coupling)));
            }
        }
        Ok(())
    }
}

/// Linear-regime shift from a force gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearShift {
    /// `ω_r² − ω₀² = −C ∂F/∂a`, rad²/s².
    pub delta_omega_sq: f64,
    /// `ω₀[1 − (C/2ω₀²) ∂F/∂a]`, rad/s.
    pub omega_r_first_order: f64,
    /// `√(ω₀² + Δω²)`, rad/s.
    pub omega_r_exact: f64,
}

impl LinearShift {
    pub fn from_gradient(osc: &OscillatorParams, gradient: f64) -> Result<Self> {
        let w0 = osc.omega0;
        let delta = -osc.coupling * gradient;
        let sq = w0 * w0 + delta;
        if !(sq > 0.0) {
            return Err(CasimirError::domain(
                "oscillator",
                "force gradient exceeds the spring constant; the oscillator is unstable",
            ));
        }
        Ok(LinearShift {
            delta_omega_sq: delta,
            omega_r_first_order: w0 * (1.0 - osc.coupling / (2.0 * w0 * w0) * gradient),
            omega_r_exact: sq.sqrt(),
        })
    }
}

/// Terms summed explicitly before the Euler–Maclaurin remainder takes over.
const DIRECT_TERMS: usize = 40;

/// `Σ_n n^{-1/2} R_n e^{−nv} I₁(κnv)` with `R_n = r_TM^{2n} + r_TE^{2n}`.
fn bessel_series(r: ReflectionPair, v: f64, kappa: f64, ctrl: &SeriesControl) -> Result<f64> {
    let (lt, le) = (r.tm_log_sq(), r.te_log_sq());
    let decay = (1.0 - kappa) * v;
    let term = |x: f64| -> Result<f64> {
        let reflect = (x * lt).exp() + (x * le).exp();
        if reflect == 0.0 {
            return Ok(0.0);
        }
        Ok(reflect * (-decay * x).exp() * bessel_i1_scaled(kappa * v * x, ctrl)? / x.sqrt())
    };
    let mut sum = 0.0;
    for n in 1..DIRECT_TERMS {
        sum += term(n as f64)?;
    }
    let rate = decay - lt.max(le);
    if rate >= 1.0 {
        // Geometric decay at least e^{-1} per term; finish directly.
        for n in DIRECT_TERMS..ctrl.max_terms {
            let t = term(n as f64)?;
            sum += t;
            if t <= 1e-17 * sum {
                return Ok(sum);
            }
        }
        return Err(CasimirError::Convergence {
            what: "Bessel n-series",
            partial: sum,
            terms: ctrl.max_terms,
        });
    }
    // Σ_{n≥N} f(n) = ∫_N^∞ f + f(N)/2 − f'(N)/12 + f'''(N)/720 − …
    let n0 = DIRECT_TERMS as f64;
    // Seven-point stencils; the five-point f' is off by ~1e-10 when f ∝ e^{-0.2n}.
    let f: Vec<f64> = (-3..=3).map(|k| term(n0 + k as f64)).collect::<Result<_>>()?;
    let d1 = (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / 60.0;
    let d3 = (f[0] - 8.0 * f[1] + 13.0 * f[2] - 13.0 * f[4] + 8.0 * f[5] - f[6]) / 8.0;
    // x = N e^s spreads the slow x⁻¹ e^{-rate·x} decay evenly in s.
    let s_max = (1.0 + 80.0 / (rate * n0)).ln();
    let panels = (s_max.ceil() as usize).max(2);
    let points: Vec<f64> = (0..=panels).map(|k| s_max * k as f64 / panels as f64).collect();
    let integral = integrate_with_breakpoints(
        |s| {
            let x = n0 * s.exp();
            Ok(x * term(x)?)
        },
        &points,
        Tolerance::relative(1e-13),
    )?;
    Ok(sum + integral.value + 0.5 * f[3] - d1 / 12.0 + d3 / 720.0)
}

fn check(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, osc: &OscillatorParams, q: &QuadratureSpec) -> Result<()> {
    validate_geometry(geom, env)?;
    mat.validate()?;
    q.validate()?;
    osc.validate(env.separation)
}

/// `ω_r² − ω₀²` beyond the linear regime, from the Bessel-series kernel.
pub fn frequency_shift_nonlinear(
    geom: &LensGeometry,
    env: &Environment,
    mat: &PermittivityModel,
    osc: &OscillatorParams,
    q: &QuadratureSpec,
) -> Result<ForceResult> {
    check(geom, env, mat, osc, q)?;
    let a = env.separation;
    let kappa = osc.relative_amplitude(a);
    let ctrl = q.series_control();
    let span = q.v_span / (1.0 - kappa);
    let factor = -(osc.coupling / osc.amplitude) * geom.length / (2.0 * PI.sqrt() * a * a) * geom.lens_factor()
        / (2.0 * a).sqrt();
    let s = spectral_sum(env, q, |zeta, rel| {
        let response = mat.response(zeta, a)?;
        v_integral(zeta, span, q.tolerance(rel), |v| {
            Ok(v * v.sqrt() * bessel_series(response.at(v), v, kappa, &ctrl)?)
        })
    })
    .map_err(|e| rescale_partial(e, factor, "nonlinear frequency shift"))?;
    Ok(ForceResult {
        value: factor * s.value,
        est_abs_error: factor.abs() * s.abs_error,
        terms_used: s.terms,
        mode: s.mode,
    })
}

/// Linear regime: `Δω² = −C ∂F/∂a` and the first-order `ω_r`.
pub fn frequency_shift_linear(
    geom: &LensGeometry,
    env: &Environment,
    mat: &PermittivityModel,
    osc: &OscillatorParams,
    q: &QuadratureSpec,
) -> Result<LinearShift> {
    check(geom, env, mat, osc, q)?;
    let g = casimir_gradient(geom, env, mat, q)?;
    LinearShift::from_gradient(osc, g.value)
}

/// Largest number of trapezoid nodes tried by the oracle.
const MAX_NODES: usize = 4096;

/// `−(C/(πA_z)) ∫₀^{2π} cos θ F(a + A_z cos θ) dθ` by the periodic trapezoid
/// rule, doubling the node count until successive estimates agree to
/// `q.rel_tol`. The integrand is periodic and analytic, so the rule converges
/// geometrically. Each force is computed with `q`.
pub fn frequency_shift_direct_oracle(
    geom: &LensGeometry,
    env: &Environment,
    mat: &PermittivityModel,
    osc: &OscillatorParams,
    q: &QuadratureSpec,
) -> Result<ForceResult> {
    check(geom, env, mat, osc, q)?;
    let (a, az) = (env.separation, osc.amplitude);
    // Forces at θ_j = πj/half for j = 0..=half; cos θ is even, so the nodes
    // on (π, 2π) mirror these.
    let mut forces: Vec<ForceResult> = Vec::new();
    let mut half = 0usize;
    let mut previous: Option<f64> = None;
    let mut n = 8usize;
    while n <= MAX_NODES {
        let new_half = n / 2;
        let mut next = Vec::with_capacity(new_half + 1);
        for j in 0..=new_half {
            let f = if half > 0 && j % 2 == 0 {
                forces[j / 2]
            } else {
                let theta = PI * j as f64 / new_half as f64;
                casimir_force(geom, &env.at_separation(a + az * theta.cos()), mat, q)?
            };
            next.push(f);
        }
        forces = next;
        half = new_half;
        let h = 2.0 * PI / n as f64;
        let mut integral = 0.0;
        let mut err = 0.0;
        for (j, f) in forces.iter().enumerate() {
            let multiplicity = if j == 0 || j == half { 1.0 } else { 2.0 };
            let c = (PI * j as f64 / half as f64).cos();
            integral += multiplicity * c * f.value;
            err += multiplicity * c.abs() * f.est_abs_error;
        }
        integral *= h;
        err *= h;
        let factor = -osc.coupling / (PI * az);
        if let Some(p) = previous {
            let change = (integral - p).abs();
            if change <= q.rel_tol * integral.abs() {
                return Ok(ForceResult {
                    value: factor * integral,
                    est_abs_error: factor.abs() * (err + change),
                    terms_used: n,
                    mode: forces[0].mode,
                });
            }
        }
        previous = Some(integral);
        n *= 2;
    }
    Err(CasimirError::Convergence {
        what: "oscillator phase quadrature",
        partial: -osc.coupling / (PI * az) * previous.unwrap_or(0.0),
        terms: MAX_NODES,
    })
}

/// Nonlinear shift for a two-halves or rotated lens.
pub fn frequency_shift_for_variant(
    geom: &LensGeometry,
    env: &Environment,
    mat: &PermittivityModel,
    osc: &OscillatorParams,
    q: &QuadratureSpec,
) -> Result<ForceResult> {
    match geom.shape {
        LensShape::TwoHalves { .. } | LensShape::Rotated { .. } => frequency_shift_nonlinear(geom, env, mat, osc, q),
        LensShape::SymmetricElliptic(_) => Err(CasimirError::invalid(
            "frequency_shift_for_variant expects a two-halves or rotated lens",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bessel_i1;

    fn ctrl() -> SeriesControl {
        SeriesControl {
            rel_tol: 1e-16,
            ..SeriesControl::default()
        }
    }

    /// Brute-force n-sum, long enough for the slowest case tested.
    fn brute(r: ReflectionPair, v: f64, kappa: f64, terms: usize) -> f64 {
        (1..=terms)
            .rev()
            .map(|n| {
                let x = n as f64;
                let reflect = r.tm.abs().powf(2.0 * x) + r.te.abs().powf(2.0 * x);
                reflect * (-(1.0 - kappa) * v * x).exp() * bessel_i1_scaled(kappa * v * x, &ctrl()).unwrap() / x.sqrt()
            })
            .sum()
    }

    #[test]
    fn series_matches_brute_force() {
        let pairs = [
            ReflectionPair::IDEAL,
            ReflectionPair { tm: 0.95, te: -0.9 },
            ReflectionPair { tm: 1.0, te: 0.0 },
        ];
        for r in pairs {
            for &(v, kappa) in &[(0.02, 0.3), (0.2, 0.5), (0.9, 0.1), (3.0, 0.3)] {
                let got = bessel_series(r, v, kappa, &ctrl()).unwrap();
                let terms = (60.0 / ((1.0 - kappa) * v).min(1.0) * 2.0) as usize + 200;
                let expected = brute(r, v, kappa, terms.max(2000) * 4);
                assert!((got / expected - 1.0).abs() < 1e-10, "{r:?} v={v} κ={kappa}: {got} vs {expected}");
            }
        }
    }

    #[test]
    fn weak_reflection_keeps_first_term() {
        // R_n = 10^{-4n}: only n = 1 survives, e^{-v} I₁(κv) ≈ e^{-v} κv/2
        let r = ReflectionPair { tm: 0.01, te: 0.0 };
        let got = bessel_series(r, 1.0, 1e-4, &ctrl()).unwrap();
        let expected = 1e-4 * (-1.0f64).exp() * bessel_i1(1e-4, &ctrl()).unwrap();
        assert!((got / expected - 1.0).abs() < 1e-3);
        assert!((got / (1e-4 * (-1.0f64).exp() * 0.5e-4) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn validation() {
        let osc = OscillatorParams::from_lever_arm(2e4, 1e-4, 2e-12, 1e-8);
        assert_eq!(osc.coupling, 1e-8 / 2e-12);
        assert!(osc.validate(1e-7).is_ok());
        assert!(matches!(osc.validate(1e-8), Err(CasimirError::Domain { .. })));
        let mut bad = osc;
        bad.coupling *= 1.001;
        assert!(bad.validate(1e-7).is_err());
    }

    #[test]
    fn linear_shift_from_gradient() {
        let osc = OscillatorParams::new(1e4, 2e3, 1e-9);
        let s = LinearShift::from_gradient(&osc, 0.0).unwrap();
        assert_eq!(s.omega_r_exact, osc.omega0);
        assert_eq!(s.omega_r_first_order, osc.omega0);
        let s = LinearShift::from_gradient(&osc, 1e-2).unwrap();
        assert!(s.omega_r_exact < osc.omega0 && s.delta_omega_sq < 0.0);
        let x = s.delta_omega_sq / (osc.omega0 * osc.omega0);
        assert!((s.omega_r_first_order - s.omega_r_exact).abs() <= osc.omega0 * x * x);
        assert!(LinearShift::from_gradient(&osc, 1e6).is_err());
    }
}
