//! Lens geometry, environment, Matsubara frequencies and PFA validity checks.

use std::f64::consts::PI;

use crate::constants::CODATA_2018;
use crate::error::{CasimirError, Result};

/// Semiaxes of an elliptic cylinder cross-section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Semiaxes {
    /// Semiaxis parallel to the plate, m.
    pub lateral: f64,
    /// Semiaxis normal to the plate, m.
    pub normal: f64,
}

impl Semiaxes {
    pub fn new(lateral: f64, normal: f64) -> Self {
        Semiaxes { lateral, normal }
    }

    /// Circular cross-section of radius `r`.
    pub fn circular(r: f64) -> Self {
        Semiaxes { lateral: r, normal: r }
    }

    /// `A / √B`, the combination through which the semiaxes enter every PFA result.
    pub fn curvature_factor(&self) -> f64 {
        self.lateral / self.normal.sqrt()
    }

    /// Radius of the circular cylinder with the same PFA results, `A²/B`.
    pub fn effective_radius(&self) -> f64 {
        self.lateral * self.lateral / self.normal
    }
}

/// The three lens shapes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LensShape {
    SymmetricElliptic(Semiaxes),
    /// Two halves cut from different elliptic cylinders, equal in thickness.
    TwoHalves { first: Semiaxes, second: Semiaxes },
    /// Elliptic lens rotated through `phi` (rad, in `[0, π/2]`) about the cylinder axis.
    Rotated { semiaxes: Semiaxes, phi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensGeometry {
    pub shape: LensShape,
    /// Lens thickness `h`, m.
    pub thickness: f64,
    /// Lens half-width `d`, m.
    pub half_width: f64,
    /// Cylinder length `L`, m.
    pub length: f64,
}

impl LensGeometry {
    /// Symmetric elliptic lens whose half-width follows from its thickness.
    pub fn symmetric(semiaxes: Semiaxes, thickness: f64, length: f64) -> Self {
        LensGeometry {
            shape: LensShape::SymmetricElliptic(semiaxes),
            thickness,
            half_width: half_width_for_thickness(semiaxes, thickness),
            length,
        }
    }

    pub fn two_halves(first: Semiaxes, second: Semiaxes, thickness: f64, length: f64) -> Self {
        let half_width = half_width_for_thickness(first, thickness)
            .min(half_width_for_thickness(second, thickness));
        LensGeometry {
            shape: LensShape::TwoHalves { first, second },
            thickness,
            half_width,
            length,
        }
    }

    pub fn rotated(semiaxes: Semiaxes, phi: f64, thickness: f64, length: f64) -> Self {
        LensGeometry {
            shape: LensShape::Rotated { semiaxes, phi },
            thickness,
            half_width: half_width_for_thickness(semiaxes, thickness),
            length,
        }
    }

    /// The geometric factor multiplying `1/√(2a)` in every PFA formula:
    /// `A/√B` for a symmetric lens, `½(A₁/√B₁ + A₂/√B₂)` for two halves and
    /// `G(A,B;φ)·A/√B` for a rotated lens.
    pub fn lens_factor(&self) -> f64 {
        match self.shape {
            LensShape::SymmetricElliptic(s) => s.curvature_factor(),
            LensShape::TwoHalves { first, second } => {
                0.5 * (first.curvature_factor() + second.curvature_factor())
            }
            LensShape::Rotated { semiaxes, phi } => {
                crate::engine::rotation_factor(semiaxes.lateral, semiaxes.normal, phi).g
                    * semiaxes.curvature_factor()
            }
        }
    }

    /// The length scale the PFA small parameter is measured against: `B`,
    /// `min(B₁, B₂)`, or `H(A,B;φ)` for the rotated lens.
    pub fn curvature_scale(&self) -> f64 {
        match self.shape {
            LensShape::SymmetricElliptic(s) => s.normal,
            LensShape::TwoHalves { first, second } => first.normal.min(second.normal),
            LensShape::Rotated { semiaxes, phi } => {
                crate::engine::rotation_factor(semiaxes.lateral, semiaxes.normal, phi).h
            }
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self.shape {
            LensShape::SymmetricElliptic(_) => "symmetric",
            LensShape::TwoHalves { .. } => "two-halves",
            LensShape::Rotated { .. } => "rotated",
        }
    }

    /// Same lens with the cylinder length replaced.
    pub fn with_length(mut self, length: f64) -> Self {
        self.length = length;
        self
    }
}

/// Half-width `d` of a section of thickness `h` cut from the cylinder's
/// lower edge: `d = (A/B)√(2Bh − h²)`, clamped to `A` for `h ≥ B`.
pub fn half_width_for_thickness(s: Semiaxes, thickness: f64) -> f64 {
    let h = thickness.min(s.normal);
    s.lateral / s.normal * (2.0 * s.normal * h - h * h).max(0.0).sqrt()
}

/// Separation and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    /// Closest lens–plate separation `a`, m.
    pub separation: f64,
    /// Temperature, K. Zero selects the zero-temperature integral mode.
    pub temperature: f64,
}

impl Environment {
    pub fn new(separation: f64, temperature: f64) -> Self {
        Environment {
            separation,
            temperature,
        }
    }

    pub fn at_separation(self, separation: f64) -> Self {
        Environment { separation, ..self }
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.temperature == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.separation > 0.0) || !self.separation.is_finite() {
            return Err(CasimirError::invalid(format!(
                "separation must be positive, got {}",
                self.separation
            )));
        }
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(CasimirError::invalid(format!(
                "temperature must be non-negative, got {}",
                self.temperature
            )));
        }
        Ok(())
    }

    /// Dimensionless spacing ζ₁ = 4π a k_B T / (ħc) of the Matsubara frequencies.
    pub fn zeta_spacing(&self) -> f64 {
        let k = CODATA_2018;
        4.0 * PI * self.separation * k.k_b * self.temperature / k.hbar_c()
    }

    pub fn matsubara(&self, index: u64) -> MatsubaraPoint {
        let k = CODATA_2018;
        let l = index as f64;
        let xi = 2.0 * PI * k.k_b * self.temperature * l / k.hbar;
        MatsubaraPoint {
            index,
            frequency: xi,
            zeta: 2.0 * self.separation * xi / k.c,
        }
    }
}

/// A Matsubara frequency `ξ_l = 2π k_B T l / ħ` and its dimensionless form `ζ_l = 2aξ_l/c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraPoint {
    pub index: u64,
    /// ξ_l, rad/s.
    pub frequency: f64,
    /// ζ_l, dimensionless.
    pub zeta: f64,
}

/// Fractional separation above which the PFA small parameters are flagged.
pub const PFA_WARNING_RATIO: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    /// `a / B` (or `a / min(B₁,B₂)`, `a / H`).
    pub separation_over_curvature: f64,
    /// `a / h`.
    pub separation_over_thickness: f64,
    /// Estimated relative PFA error `0.3 a / B`.
    pub pfa_error_estimate: f64,
    /// Soft violations; results are still computed.
    pub warnings: Vec<String>,
}

impl ValidityReport {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(CasimirError::invalid(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

fn check_semiaxes(label: &str, s: Semiaxes, warnings: &mut Vec<String>) -> Result<()> {
    positive(&format!("{label} lateral semiaxis"), s.lateral)?;
    positive(&format!("{label} normal semiaxis"), s.normal)?;
    if s.lateral < s.normal {
        warnings.push(format!(
            "{label}: lateral semiaxis {:e} m is smaller than normal semiaxis {:e} m",
            s.lateral, s.normal
        ));
    }
    Ok(())
}

/// Checks hard constraints and reports the PFA small parameters.
pub fn validate_geometry(geom: &LensGeometry, env: &Environment) -> Result<ValidityReport> {
    env.validate()?;
    positive("thickness", geom.thickness)?;
    positive("half-width", geom.half_width)?;
    positive("length", geom.length)?;
    let mut warnings = Vec::new();
    match geom.shape {
        LensShape::SymmetricElliptic(s) => {
            check_semiaxes("lens", s, &mut warnings)?;
            check_section(s, geom, &mut warnings)?;
        }
        LensShape::TwoHalves { first, second } => {
            check_semiaxes("first half", first, &mut warnings)?;
            check_semiaxes("second half", second, &mut warnings)?;
            if geom.thickness > first.normal.min(second.normal) * 2.0 {
                return Err(CasimirError::invalid("thickness exceeds the height of a half's cylinder"));
            }
            if geom.half_width > first.lateral.min(second.lateral) {
                return Err(CasimirError::invalid("half-width exceeds a half's lateral semiaxis"));
            }
        }
        LensShape::Rotated { semiaxes, phi } => {
            check_semiaxes("lens", semiaxes, &mut warnings)?;
            if !(0.0..=PI / 2.0).contains(&phi) {
                return Err(CasimirError::invalid(format!("rotation angle {phi} outside [0, π/2]")));
            }
            let h = crate::engine::rotation_factor(semiaxes.lateral, semiaxes.normal, phi).h;
            if geom.thickness >= 2.0 * h {
                return Err(CasimirError::invalid(
                    "thickness exceeds the rotated lens height 2H(A,B;φ)",
                ));
            }
        }
    }

    let scale = geom.curvature_scale();
    let over_curvature = env.separation / scale;
    let over_thickness = env.separation / geom.thickness;
    if over_curvature > PFA_WARNING_RATIO {
        warnings.push(format!(
            "a/B = {over_curvature:.3e} exceeds {PFA_WARNING_RATIO}; PFA accuracy degraded"
        ));
    }
    if over_thickness > PFA_WARNING_RATIO {
        warnings.push(format!(
            "a/h = {over_thickness:.3e} exceeds {PFA_WARNING_RATIO}; thin-lens truncation not negligible"
        ));
    }
    Ok(ValidityReport {
        separation_over_curvature: over_curvature,
        separation_over_thickness: over_thickness,
        pfa_error_estimate: 0.3 * over_curvature,
        warnings,
    })
}

fn check_section(s: Semiaxes, geom: &LensGeometry, warnings: &mut Vec<String>) -> Result<()> {
    if geom.half_width > s.lateral {
        return Err(CasimirError::invalid(format!(
            "half-width {:e} m exceeds lateral semiaxis {:e} m",
            geom.half_width, s.lateral
        )));
    }
    if geom.thickness > 2.0 * s.normal {
        return Err(CasimirError::invalid(format!(
            "thickness {:e} m exceeds cylinder height {:e} m",
            geom.thickness,
            2.0 * s.normal
        )));
    }
    if geom.thickness <= s.normal {
        let expected = half_width_for_thickness(s, geom.thickness);
        if ((geom.half_width - expected) / expected).abs() > 1e-6 {
            warnings.push(format!(
                "half-width {:e} m inconsistent with thickness (expected {:e} m)",
                geom.half_width, expected
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens(b: f64) -> LensGeometry {
        LensGeometry::symmetric(Semiaxes::new(1.2 * b, b), 50e-6, 1e-3)
    }

    #[test]
    fn pfa_error_estimate_typical() {
        let r = validate_geometry(&lens(100e-6), &Environment::new(200e-9, 300.0)).unwrap();
        assert!((r.pfa_error_estimate - 6e-4).abs() < 1e-15);
        assert!(r.is_clean());
    }

    #[test]
    fn large_separation_warns() {
        let r = validate_geometry(&lens(100e-6), &Environment::new(20e-6, 300.0)).unwrap();
        assert!((r.pfa_error_estimate - 0.06).abs() < 1e-15);
        assert!(!r.is_clean());
    }

    #[test]
    fn estimate_vanishes_in_limit_and_is_linear() {
        let g = lens(100e-6);
        let r1 = validate_geometry(&g, &Environment::new(1e-12, 0.0)).unwrap();
        assert!(r1.pfa_error_estimate < 1e-8);
        let ra = validate_geometry(&g, &Environment::new(150e-9, 300.0)).unwrap();
        let rb = validate_geometry(&g, &Environment::new(300e-9, 300.0)).unwrap();
        assert!((rb.pfa_error_estimate / ra.pfa_error_estimate - 2.0).abs() < 1e-14);
        assert_eq!(ra, validate_geometry(&g, &Environment::new(150e-9, 300.0)).unwrap());
    }

    #[test]
    fn nonpositive_lengths_are_hard_errors() {
        let mut g = lens(100e-6);
        g.length = 0.0;
        assert!(validate_geometry(&g, &Environment::new(1e-7, 300.0)).is_err());
        let g = lens(100e-6);
        assert!(validate_geometry(&g, &Environment::new(-1e-7, 300.0)).is_err());
        let g = LensGeometry::symmetric(Semiaxes::new(1e-4, -1e-4), 1e-5, 1e-3);
        assert!(validate_geometry(&g, &Environment::new(1e-7, 300.0)).is_err());
    }

    #[test]
    fn half_width_beyond_semiaxis_rejected() {
        let mut g = lens(100e-6);
        g.half_width = 1.0;
        assert!(validate_geometry(&g, &Environment::new(1e-7, 300.0)).is_err());
    }

    #[test]
    fn matsubara_points() {
        let env = Environment::new(1e-6, 300.0);
        let p0 = env.matsubara(0);
        assert_eq!(p0.frequency, 0.0);
        assert_eq!(p0.zeta, 0.0);
        let p1 = env.matsubara(1);
        let p2 = env.matsubara(2);
        assert!(p2.zeta > p1.zeta && p1.zeta > 0.0);
        assert!((p1.zeta / env.zeta_spacing() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn effective_radius_factor() {
        let s = Semiaxes::new(120e-6, 100e-6);
        let r = s.effective_radius();
        assert!((Semiaxes::circular(r).curvature_factor() / s.curvature_factor() - 1.0).abs() < 1e-15);
    }
}
