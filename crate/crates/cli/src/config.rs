//! Run configuration: a flat, sectioned key-value file (TOML syntax).
//!
//! ```toml
//! command = "force"
//!
//! [geometry]
//! variant = "symmetric"
//! lateral = 100e-6
//! normal = 100e-6
//! thickness = 50e-6
//! length = 1e-3
//!
//! [material]
//! model = "drude"
//!
//! [environment]
//! separation = 200e-9
//! temperature = 300
//!
//! [sweep]
//! variable = "a"
//! start = 150e-9
//! stop = 5e-6
//! count = 40
//! spacing = "log"
//! ```

use std::path::{Path, PathBuf};

use casimir_core::constants::ev_to_rad_per_s;
use casimir_core::dielectric::{GOLD_PLASMA_FREQUENCY_EV, GOLD_RELAXATION_FREQUENCY_EV};
use casimir_core::{
    load_tabulated_permittivity, validate_geometry, BiasState, Environment, LensGeometry,
    OscillatorParams, PermittivityModel, QuadratureSpec, Semiaxes,
};
use serde::{Deserialize, Serialize};

use crate::error::{config, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Force,
    Gradient,
    Efield,
    FreqShift,
    RatioSweep,
}

impl Command {
    fn needs_material(self) -> bool {
        matches!(self, Command::Force | Command::Gradient | Command::FreqShift)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Symmetric,
    TwoHalves,
    Rotated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    #[serde(default = "default_variant")]
    pub variant: Variant,
    /// Lateral semiaxis `A`, m.
    pub lateral: f64,
    /// Normal semiaxis `B`, m.
    pub normal: f64,
    /// Second half (two-halves only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_lateral: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_normal: Option<f64>,
    /// Rotation angle, rad (rotated only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    /// Lens thickness `h`, m.
    pub thickness: f64,
    /// Cylinder length `L`, m.
    pub length: f64,
}

fn default_variant() -> Variant {
    Variant::Symmetric
}

impl GeometrySection {
    pub fn build(&self, phi: Option<f64>) -> Result<LensGeometry, CliError> {
        let first = Semiaxes::new(self.lateral, self.normal);
        Ok(match self.variant {
            Variant::Symmetric => LensGeometry::symmetric(first, self.thickness, self.length),
            Variant::TwoHalves => {
                let (Some(a2), Some(b2)) = (self.second_lateral, self.second_normal) else {
                    return Err(config("two-halves geometry needs second_lateral and second_normal"));
                };
                LensGeometry::two_halves(first, Semiaxes::new(a2, b2), self.thickness, self.length)
            }
            Variant::Rotated => {
                let phi = phi.or(self.phi).unwrap_or(0.0);
                LensGeometry::rotated(first, phi, self.thickness, self.length)
            }
        })
    }

    pub fn is_circular(&self) -> bool {
        self.variant == Variant::Symmetric && self.lateral == self.normal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    IdealMetal,
    Plasma,
    Drude,
    Tabulated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSection {
    pub model: Model,
    /// Plasma frequency, eV. Defaults to gold for plasma and Drude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_p_ev: Option<f64>,
    /// Relaxation frequency, eV. Defaults to gold for Drude.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_ev: Option<f64>,
    /// Two-column `xi_rad_per_s epsilon` file for the tabulated model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<PathBuf>,
}

impl MaterialSection {
    fn resolve(&mut self) -> Result<(), CliError> {
        match self.model {
            Model::IdealMetal | Model::Tabulated => {
                if self.omega_p_ev.is_some() || self.gamma_ev.is_some() {
                    return Err(config("omega_p_ev and gamma_ev apply only to plasma and drude"));
                }
                if self.model == Model::Tabulated && self.table.is_none() {
                    return Err(config("tabulated material needs a table path"));
                }
            }
            Model::Plasma => {
                if self.gamma_ev.is_some() {
                    return Err(config("the plasma model takes no gamma_ev"));
                }
                self.omega_p_ev.get_or_insert(GOLD_PLASMA_FREQUENCY_EV);
            }
            Model::Drude => {
                self.omega_p_ev.get_or_insert(GOLD_PLASMA_FREQUENCY_EV);
                self.gamma_ev.get_or_insert(GOLD_RELAXATION_FREQUENCY_EV);
            }
        }
        if self.model != Model::Tabulated && self.table.is_some() {
            return Err(config("a table path is only used by the tabulated model"));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<PermittivityModel, CliError> {
        let ev = |x: Option<f64>| ev_to_rad_per_s(x.unwrap_or(f64::NAN));
        Ok(match self.model {
            Model::IdealMetal => PermittivityModel::IdealMetal,
            Model::Plasma => PermittivityModel::Plasma {
                omega_p: ev(self.omega_p_ev),
            },
            Model::Drude => PermittivityModel::Drude {
                omega_p: ev(self.omega_p_ev),
                gamma: ev(self.gamma_ev),
            },
            Model::Tabulated => load_tabulated_permittivity(self.table.as_deref().unwrap_or(Path::new("")))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentSection {
    /// Closest lens–plate separation `a`, m.
    pub separation: f64,
    /// K; `0` selects the zero-temperature mode. Not used by `efield`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiasSection {
    /// Applied voltage, V.
    pub voltage: f64,
    /// Residual potential, V.
    #[serde(default)]
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorSection {
    /// Natural angular frequency, rad/s.
    pub omega0: f64,
    /// Oscillation amplitude `A_z`, m.
    pub amplitude: f64,
    /// `C = b²/I`, 1/kg. Derived when `lever_arm` and `inertia` are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lever_arm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inertia: Option<f64>,
}

impl OscillatorSection {
    pub fn build(&self, amplitude: Option<f64>) -> Result<OscillatorParams, CliError> {
        let amplitude = amplitude.unwrap_or(self.amplitude);
        match (self.coupling, self.lever_arm, self.inertia) {
            (Some(c), None, None) => Ok(OscillatorParams::new(self.omega0, c, amplitude)),
            (None, Some(b), Some(i)) => Ok(OscillatorParams::from_lever_arm(self.omega0, b, i, amplitude)),
            _ => Err(config("oscillator needs either coupling or both lever_arm and inertia")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVariable {
    #[serde(rename = "a")]
    Separation,
    #[serde(rename = "T")]
    Temperature,
    #[serde(rename = "phi")]
    Angle,
    #[serde(rename = "Az")]
    Amplitude,
    #[serde(rename = "V")]
    Voltage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default = "default_spacing")]
    pub spacing: Spacing,
}

fn default_spacing() -> Spacing {
    Spacing::Linear
}

impl SweepSection {
    fn validate(&self) -> Result<(), CliError> {
        if !self.start.is_finite() || !self.stop.is_finite() || !(self.start < self.stop) {
            return Err(config(format!("sweep needs start < stop, got {} and {}", self.start, self.stop)));
        }
        if self.count < 2 {
            return Err(config(format!("sweep needs count >= 2, got {}", self.count)));
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0) {
            return Err(config("log spacing needs a positive start"));
        }
        Ok(())
    }

    /// Sweep values; the endpoints are exact.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.count - 1 {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    /// Destination file; stdout when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: Format,
    /// Adds the `T = 0` value and `(X_T − X_0)/X_T` columns to force and
    /// gradient tables.
    #[serde(default)]
    pub thermal_correction: bool,
}

fn default_format() -> Format {
    Format::Csv
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            path: None,
            format: Format::Csv,
            thermal_correction: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_max: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_span: Option<f64>,
}

impl QuadratureSection {
    fn resolve(&mut self) {
        let d = QuadratureSpec::default();
        self.rel_tol.get_or_insert(d.rel_tol);
        self.l_max.get_or_insert(d.l_max);
        self.n_max.get_or_insert(d.n_max);
        self.v_span.get_or_insert(d.v_span);
    }

    pub fn build(&self) -> QuadratureSpec {
        let d = QuadratureSpec::default();
        QuadratureSpec {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            l_max: self.l_max.unwrap_or(d.l_max),
            n_max: self.n_max.unwrap_or(d.n_max),
            v_span: self.v_span.unwrap_or(d.v_span),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioSection {
    /// Values of `A/B` for the rotation-factor curves.
    pub axis_ratios: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<MaterialSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bias: Option<BiasSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<RatioSection>,
    #[serde(default)]
    pub quadrature: QuadratureSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub tolerance: Option<f64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, CliError> {
        toml::from_str(text).map_err(|e| config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Applies overrides, fills defaults and validates. The result is what
    /// gets recorded in the output header.
    pub fn resolve(mut self, overrides: &Overrides) -> Result<RunConfig, CliError> {
        if let Some(p) = &overrides.output {
            self.output.path = Some(p.clone());
        }
        if let Some(f) = overrides.format {
            self.output.format = f;
        }
        if let Some(t) = overrides.tolerance {
            self.quadrature.rel_tol = Some(t);
        }
        self.quadrature.resolve();
        if let Some(m) = self.material.as_mut() {
            m.resolve()?;
        }
        if self.command == Command::RatioSweep && self.ratio.is_none() {
            self.ratio = Some(RatioSection {
                axis_ratios: vec![1.1, 1.2, 1.3, 1.4],
            });
        }
        self.validate()?;
        Ok(self)
    }

    fn require<'a, T>(&self, section: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
        section
            .as_ref()
            .ok_or_else(|| config(format!("command {:?} needs a [{name}] section", self.command)))
    }

    fn validate(&self) -> Result<(), CliError> {
        use SweepVariable::*;
        let cmd = self.command;
        if let Some(s) = &self.sweep {
            s.validate()?;
        }
        let variable = self.sweep.as_ref().map(|s| s.variable);
        let allowed: &[SweepVariable] = match cmd {
            Command::Force | Command::Gradient => &[Separation, Temperature, Angle],
            Command::Efield => &[Separation, Voltage, Angle],
            Command::FreqShift => &[Separation, Temperature, Angle, Amplitude],
            Command::RatioSweep => &[Angle],
        };
        match variable {
            Some(v) if !allowed.contains(&v) => {
                return Err(config(format!("sweep variable {v:?} does not apply to {cmd:?}")));
            }
            None if cmd == Command::RatioSweep => return Err(config("ratio-sweep needs a [sweep] over phi")),
            _ => {}
        }
        if cmd == Command::RatioSweep {
            let ratios = &self.require(&self.ratio, "ratio")?.axis_ratios;
            if ratios.is_empty() || ratios.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
                return Err(config("axis_ratios must be a non-empty list of positive numbers"));
            }
            return Ok(());
        }

        let geometry = self.require(&self.geometry, "geometry")?;
        if variable == Some(Angle) && geometry.variant != Variant::Rotated {
            return Err(config("a phi sweep needs a rotated geometry"));
        }
        let env = self.require(&self.environment, "environment")?;
        if cmd.needs_material() {
            self.require(&self.material, "material")?;
            if env.temperature.is_none() {
                return Err(config("[environment] needs a temperature"));
            }
        }
        if cmd == Command::Efield {
            self.require(&self.bias, "bias")?;
        }
        if cmd == Command::FreqShift {
            self.require(&self.oscillator, "oscillator")?.build(None)?;
        }
        if self.output.thermal_correction && !matches!(cmd, Command::Force | Command::Gradient) {
            return Err(config("thermal_correction applies to force and gradient only"));
        }
        self.check_physics()
    }

    /// Physical constraints at both ends of the sweep.
    fn check_physics(&self) -> Result<(), CliError> {
        self.quadrature.build().validate()?;
        if let Some(m) = &self.material {
            m.build()?.validate()?;
        }
        let ends: Vec<Option<(SweepVariable, f64)>> = match &self.sweep {
            Some(s) => vec![Some((s.variable, s.start)), Some((s.variable, s.stop))],
            None => vec![None],
        };
        for end in ends {
            let point = Point::base(self).with(end);
            let geom = self.geometry.as_ref().unwrap().build(point.phi)?;
            let env = Environment::new(point.separation, point.temperature.unwrap_or(0.0));
            validate_geometry(&geom, &env)?;
            if let Some(osc) = &self.oscillator {
                osc.build(point.amplitude)?.validate(point.separation)?;
            }
            if let Some(b) = &self.bias {
                if !b.voltage.is_finite() || !b.residual.is_finite() {
                    return Err(config("bias voltages must be finite"));
                }
            }
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }
}

/// One sweep point: the environment values after applying the swept variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub separation: f64,
    pub temperature: Option<f64>,
    pub phi: Option<f64>,
    pub amplitude: Option<f64>,
    pub voltage: Option<f64>,
}

impl Point {
    pub fn base(cfg: &RunConfig) -> Point {
        Point {
            separation: cfg.environment.as_ref().map_or(f64::NAN, |e| e.separation),
            temperature: cfg.environment.as_ref().and_then(|e| e.temperature),
            phi: cfg.geometry.as_ref().and_then(|g| g.phi),
            amplitude: cfg.oscillator.as_ref().map(|o| o.amplitude),
            voltage: cfg.bias.as_ref().map(|b| b.voltage),
        }
    }

    pub fn with(mut self, value: Option<(SweepVariable, f64)>) -> Point {
        if let Some((v, x)) = value {
            match v {
                SweepVariable::Separation => self.separation = x,
                SweepVariable::Temperature => self.temperature = Some(x),
                SweepVariable::Angle => self.phi = Some(x),
                SweepVariable::Amplitude => self.amplitude = Some(x),
                SweepVariable::Voltage => self.voltage = Some(x),
            }
        }
        self
    }

    pub fn bias(&self, cfg: &RunConfig) -> BiasState {
        let residual = cfg.bias.as_ref().map_or(0.0, |b| b.residual);
        BiasState::new(self.voltage.unwrap_or(0.0), residual)
    }
}
