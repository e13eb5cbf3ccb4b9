//! Electric calibration force between a biased lens and the plate.
//!
//! Elliptic lenses have only the PFA form. For a circular cylinder the exact
//! two-conductor result and its small-`a/R` expansion are available, which
//! bounds the calibration error of the PFA form.

use std::f64::consts::PI;

use crate::constants::CODATA_2018;
use crate::error::{CasimirError, Result};
use crate::geometry::{LensGeometry, LensShape};

/// Applied voltage `V` and residual potential `V₀`, in volts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasState {
    pub voltage: f64,
    pub residual: f64,
}

impl BiasState {
    pub fn new(voltage: f64, residual: f64) -> Self {
        BiasState { voltage, residual }
    }

    /// `(V − V₀)²`
    pub fn squared_difference(&self) -> f64 {
        let d = self.voltage - self.residual;
        d * d
    }

    fn validate(&self) -> Result<()> {
        if !self.voltage.is_finite() || !self.residual.is_finite() {
            return Err(CasimirError::invalid("bias voltages must be finite"));
        }
        Ok(())
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(CasimirError::invalid(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

/// `−(πε₀L/(2a)) · g/√(2a) · (V − V₀)²` with the lens factor `g` of any variant.
pub fn pfa_electric_force(geom: &LensGeometry, separation: f64, bias: &BiasState) -> Result<f64> {
    positive("separation", separation)?;
    positive("length", geom.length)?;
    bias.validate()?;
    let a = separation;
    Ok(-PI * CODATA_2018.eps0 * geom.length / (2.0 * a) * geom.lens_factor() / (2.0 * a).sqrt()
        * bias.squared_difference())
}

/// Exact force on a circular cylinder of radius `R` whose axis lies at
/// `R + a` above the plate: `−πε₀L(V−V₀)² / (Δ arcosh²(1 + a/R))` with
/// `Δ = √(a(2R + a))`.
pub fn exact_circular_electric_force(radius: f64, separation: f64, bias: &BiasState, length: f64) -> Result<f64> {
    positive("radius", radius)?;
    positive("separation", separation)?;
    positive("length", length)?;
    bias.validate()?;
    let a = separation;
    let t = a / radius;
    let delta = (a * (2.0 * radius + a)).sqrt();
    // arcosh(1 + t) = ln(1 + t + √(t(2 + t))), accurate for small t
    let acosh = (t + (t * (2.0 + t)).sqrt()).ln_1p();
    Ok(-PI * CODATA_2018.eps0 * length * bias.squared_difference() / (delta * acosh * acosh))
}

/// `1 − t/12 + 17t²/480` with `t = a/R`.
pub fn circular_correction_factor(separation_over_radius: f64) -> f64 {
    let t = separation_over_radius;
    1.0 - t / 12.0 + 17.0 * t * t / 480.0
}

/// Leading PFA term times [`circular_correction_factor`].
pub fn expanded_electric_force(radius: f64, separation: f64, bias: &BiasState, length: f64) -> Result<f64> {
    positive("radius", radius)?;
    positive("length", length)?;
    bias.validate()?;
    if !(separation >= 0.0) {
        return Err(CasimirError::invalid("separation must be non-negative"));
    }
    let a = separation;
    let leading = -PI * CODATA_2018.eps0 * length * radius.sqrt() / (2.0 * 2f64.sqrt() * a.powf(1.5));
    Ok(leading * bias.squared_difference() * circular_correction_factor(a / radius))
}

/// PFA electric force on a two-halves or rotated lens.
pub fn asymmetric_electric_force(geom: &LensGeometry, separation: f64, bias: &BiasState) -> Result<f64> {
    match geom.shape {
        LensShape::TwoHalves { .. } | LensShape::Rotated { .. } => pfa_electric_force(geom, separation, bias),
        LensShape::SymmetricElliptic(_) => Err(CasimirError::invalid(
            "asymmetric electric force expects a two-halves or rotated lens",
        )),
    }
}
