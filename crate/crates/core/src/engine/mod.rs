//! Casimir force and gradient in the proximity force approximation.
//!
//! Every lens variant enters through one geometric factor (see
//! [`LensGeometry::lens_factor`]), so the frequency sums are shared and the
//! variants differ from the symmetric lens only by an exact multiplicative
//! constant.

mod oracle;
pub(crate) mod spectral;

pub use oracle::{direct_pfa_force_oracle, rotated_direct_oracle};

use std::f64::consts::PI;

use crate::constants::CODATA_2018;
use crate::dielectric::PermittivityModel;
use crate::error::{CasimirError, Result};
use crate::geometry::{validate_geometry, Environment, LensGeometry, LensShape};
use spectral::{polylog_kernel, rescale_partial, spectral_sum, Kernel};

/// Truncation and tolerance controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target relative accuracy of the final result.
    pub rel_tol: f64,
    /// Cap on Matsubara terms.
    pub l_max: u64,
    /// Cap on explicit `n`-series and polylog terms.
    pub n_max: usize,
    /// Width of the `v` integration window above `ζ_l`.
    pub v_span: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            l_max: 100_000,
            n_max: 1_000_000,
            v_span: 80.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(CasimirError::invalid(format!("relative tolerance {} outside (0, 1)", self.rel_tol)));
        }
        if self.l_max < 1 || self.n_max < 1 {
            return Err(CasimirError::invalid("series caps must be at least 1"));
        }
        if !(self.v_span >= 10.0) || !self.v_span.is_finite() {
            return Err(CasimirError::invalid(format!("v window {} too short", self.v_span)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForceMode {
    FiniteT,
    ZeroT,
}

impl ForceMode {
    pub fn name(self) -> &'static str {
        match self {
            ForceMode::FiniteT => "finite-T",
            ForceMode::ZeroT => "zero-T",
        }
    }
}

/// A force (N), gradient (N/m) or squared-frequency shift (rad²/s²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub value: f64,
    pub est_abs_error: f64,
    /// Matsubara terms summed, or frequency nodes at `T = 0`.
    pub terms_used: usize,
    pub mode: ForceMode,
}

impl ForceResult {
    /// Same result multiplied by a constant.
    pub fn scaled(self, factor: f64) -> Self {
        ForceResult {
            value: self.value * factor,
            est_abs_error: self.est_abs_error * factor.abs(),
            ..self
        }
    }
}

/// `G(A,B;φ)` and the height `H(A,B;φ)` of a rotated elliptic cylinder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationFactor {
    pub g: f64,
    /// m
    pub h: f64,
}

/// `H = √(A² sin²φ + B² cos²φ)`, `G = (B/H)^{3/2} = (A²/B² sin²φ + cos²φ)^{-3/4}`.
pub fn rotation_factor(a_axis: f64, b_axis: f64, phi: f64) -> RotationFactor {
    let (s, c) = phi.sin_cos();
    let h = (a_axis * a_axis * s * s + b_axis * b_axis * c * c).sqrt();
    let ratio = a_axis / b_axis;
    let g = (ratio * ratio * s * s + c * c).powf(-0.75);
    RotationFactor { g, h }
}

fn check_inputs(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<()> {
    validate_geometry(geom, env)?;
    mat.validate()?;
    q.validate()
}

/// `(L/(4√π a^p)) · g/√(2a)`
fn prefactor(geom: &LensGeometry, separation: f64, power: i32) -> f64 {
    geom.length / (4.0 * PI.sqrt() * separation.powi(power)) * geom.lens_factor() / (2.0 * separation).sqrt()
}

fn evaluate(kind: Kernel, geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    check_inputs(geom, env, mat, q)?;
    let a = env.separation;
    let (factor, what) = match kind {
        Kernel::Force => (-prefactor(geom, a, 2), "Casimir force"),
        Kernel::Gradient => (prefactor(geom, a, 3), "Casimir force gradient"),
    };
    let s = spectral_sum(env, q, |zeta, rel| polylog_kernel(kind, mat, zeta, a, q, rel))
        .map_err(|e| rescale_partial(e, factor, what))?;
    Ok(ForceResult {
        value: factor * s.value,
        est_abs_error: factor.abs() * s.abs_error,
        terms_used: s.terms,
        mode: s.mode,
    })
}

/// Casimir force (N, negative = attractive). The lens variant enters through
/// its geometric factor; `T = 0` selects the continuous-frequency mode.
pub fn casimir_force(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    evaluate(Kernel::Force, geom, env, mat, q)
}

/// Force gradient `∂F/∂a` (N/m, positive).
pub fn casimir_gradient(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    evaluate(Kernel::Gradient, geom, env, mat, q)
}

/// Force at `T = 0` via the continuous frequency integral.
pub fn zero_temperature_force(geom: &LensGeometry, separation: f64, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    casimir_force(geom, &Environment::new(separation, 0.0), mat, q)
}

/// Gradient at `T = 0` via the continuous frequency integral.
pub fn zero_temperature_gradient(geom: &LensGeometry, separation: f64, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    casimir_gradient(geom, &Environment::new(separation, 0.0), mat, q)
}

/// Ideal-metal force at `T = 0`: `−π³Lħc/(384a³) · g/√(2a)`.
pub fn ideal_metal_force_t0(geom: &LensGeometry, separation: f64) -> f64 {
    let a = separation;
    -PI.powi(3) * geom.length * CODATA_2018.hbar_c() / (384.0 * a.powi(3)) * geom.lens_factor() / (2.0 * a).sqrt()
}

/// Ideal-metal gradient at `T = 0`: `7π³Lħc/(768a⁴) · g/√(2a)`, the exact
/// derivative of [`ideal_metal_force_t0`].
pub fn ideal_metal_gradient_t0(geom: &LensGeometry, separation: f64) -> f64 {
    let a = separation;
    7.0 * PI.powi(3) * geom.length * CODATA_2018.hbar_c() / (768.0 * a.powi(4)) * geom.lens_factor() / (2.0 * a).sqrt()
}

/// The `l = 0` term of the Matsubara sum alone (with its weight ½), which
/// dominates at large `a T`. Requires `T > 0`.
pub fn classical_term_force(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<f64> {
    check_inputs(geom, env, mat, q)?;
    if env.is_zero_temperature() {
        return Err(CasimirError::invalid("the classical term needs T > 0"));
    }
    let a = env.separation;
    let k = polylog_kernel(Kernel::Force, mat, 0.0, a, q, q.rel_tol * 0.1)?;
    Ok(-prefactor(geom, a, 2) * CODATA_2018.k_b * env.temperature * 0.5 * k.value)
}

fn require_two_halves(geom: &LensGeometry) -> Result<()> {
    match geom.shape {
        LensShape::TwoHalves { .. } => Ok(()),
        _ => Err(CasimirError::invalid(format!("expected a two-halves lens, got {}", geom.variant_name()))),
    }
}

fn require_rotated(geom: &LensGeometry) -> Result<()> {
    match geom.shape {
        LensShape::Rotated { .. } => Ok(()),
        _ => Err(CasimirError::invalid(format!("expected a rotated lens, got {}", geom.variant_name()))),
    }
}

/// Force on a lens made of two halves of different elliptic cylinders: the
/// mean of the two symmetric-lens forces.
pub fn two_halves_force(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    require_two_halves(geom)?;
    casimir_force(geom, env, mat, q)
}

pub fn two_halves_gradient(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    require_two_halves(geom)?;
    casimir_gradient(geom, env, mat, q)
}

/// Force on a rotated lens: `G(A,B;φ)` times the unrotated result.
pub fn rotated_force(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    require_rotated(geom)?;
    casimir_force(geom, env, mat, q)
}

pub fn rotated_gradient(geom: &LensGeometry, env: &Environment, mat: &PermittivityModel, q: &QuadratureSpec) -> Result<ForceResult> {
    require_rotated(geom)?;
    casimir_gradient(geom, env, mat, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Semiaxes;

    fn circular() -> LensGeometry {
        LensGeometry::symmetric(Semiaxes::circular(100e-6), 50e-6, 1e-3)
    }

    #[test]
    fn ideal_metal_closed_form_value() {
        let f = ideal_metal_force_t0(&circular(), 200e-9);
        assert!((f * 1e9 + 5.045).abs() < 0.005, "{f}");
        let g = ideal_metal_gradient_t0(&circular(), 200e-9);
        assert!((g - 3.5 * f.abs() / 200e-9).abs() < 1e-15 * g);
        assert!((g - 8.83e-2).abs() < 1e-3);
    }

    #[test]
    fn closed_form_power_law() {
        let g = circular();
        let r = ideal_metal_force_t0(&g, 400e-9) / ideal_metal_force_t0(&g, 200e-9);
        assert!((r - 2f64.powf(-3.5)).abs() < 1e-15);
    }

    #[test]
    fn coefficient_from_zeta_four() {
        let zeta4 = PI.powi(4) / 90.0;
        assert!((15.0 / (64.0 * PI) * zeta4 - PI.powi(3) / 384.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_factor_values() {
        let r = rotation_factor(1.4, 1.0, 0.0);
        assert_eq!(r.g, 1.0);
        assert_eq!(r.h, 1.0);
        let r = rotation_factor(1.4, 1.0, 0.1);
        assert!((r.g - 0.9929).abs() < 5e-5, "{}", r.g);
        let r = rotation_factor(1.2, 1.0, 0.1);
        assert!((r.g - 0.9967).abs() < 5e-5, "{}", r.g);
        // G(A,B;π/2)·A/√B = B/√A
        let (a, b) = (1.3, 0.7);
        let r = rotation_factor(a, b, PI / 2.0);
        assert!((r.g * a / b.sqrt() - b / a.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn force_is_linear_in_length() {
        let env = Environment::new(1e-6, 300.0);
        let q = QuadratureSpec::with_rel_tol(1e-6);
        let m = PermittivityModel::IdealMetal;
        let f1 = casimir_force(&circular(), &env, &m, &q).unwrap();
        let f2 = casimir_force(&circular().with_length(3e-3), &env, &m, &q).unwrap();
        assert!((f2.value / f1.value - 3.0).abs() < 1e-14);
        assert!(f1.value < 0.0);
        assert_eq!(f1.mode, ForceMode::FiniteT);
    }

    #[test]
    fn variant_guards() {
        let env = Environment::new(1e-6, 300.0);
        let q = QuadratureSpec::default();
        let m = PermittivityModel::IdealMetal;
        assert!(two_halves_force(&circular(), &env, &m, &q).is_err());
        assert!(rotated_gradient(&circular(), &env, &m, &q).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec::with_rel_tol(0.0).validate().is_err());
        assert!(QuadratureSpec { l_max: 0, ..Default::default() }.validate().is_err());
    }
}
