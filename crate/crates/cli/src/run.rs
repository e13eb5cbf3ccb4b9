//! Executes a resolved [`RunConfig`] into a [`Table`].

use std::io::Write;

use casimir_core::{
    casimir_force, casimir_gradient, exact_circular_electric_force, expanded_electric_force, frequency_shift_linear,
    frequency_shift_nonlinear, pfa_electric_force, rotation_factor, validate_geometry, CasimirError, Environment,
    ForceResult, LensGeometry, PermittivityModel, QuadratureSpec,
};
use rayon::prelude::*;

use crate::config::{Command, Format, Point, RunConfig, Variant};
use crate::error::CliError;
use crate::table::{Cell, Table};

type Evaluator = fn(&LensGeometry, &Environment, &PermittivityModel, &QuadratureSpec) -> casimir_core::Result<ForceResult>;

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub table: Table,
    /// PFA-validity and similar diagnostics, deduplicated, in sweep order.
    pub warnings: Vec<String>,
    /// Rows whose series or quadrature hit a cap; their values are partial.
    pub unconverged: usize,
}

impl RunOutput {
    pub fn exit_code(&self) -> u8 {
        if self.unconverged > 0 {
            4
        } else {
            0
        }
    }
}

struct Row {
    cells: Vec<Cell>,
    warnings: Vec<String>,
    converged: bool,
}

/// Value of a computation, or its partial value when a cap was hit.
struct Settled {
    value: f64,
    error: f64,
    terms: u64,
    converged: bool,
}

fn settle(r: casimir_core::Result<ForceResult>) -> Result<Settled, CliError> {
    match r {
        Ok(f) => Ok(Settled {
            value: f.value,
            error: f.est_abs_error,
            terms: f.terms_used as u64,
            converged: true,
        }),
        Err(CasimirError::Convergence { partial, terms, .. }) => Ok(Settled {
            value: partial,
            error: f64::NAN,
            terms: terms as u64,
            converged: false,
        }),
        Err(e) => Err(e.into()),
    }
}

fn mode_name(temperature: f64) -> &'static str {
    if temperature == 0.0 {
        "zero-T"
    } else {
        "finite-T"
    }
}

struct Context<'a> {
    cfg: &'a RunConfig,
    material: Option<PermittivityModel>,
    quadrature: QuadratureSpec,
    rotated: bool,
}

impl Context<'_> {
    fn geometry(&self, p: &Point) -> Result<LensGeometry, CliError> {
        self.cfg.geometry.as_ref().expect("validated").build(p.phi)
    }

    fn material(&self) -> &PermittivityModel {
        self.material.as_ref().expect("validated")
    }

    fn columns(&self) -> Vec<&'static str> {
        let cfg = self.cfg;
        let mut c = Vec::new();
        match cfg.command {
            Command::Force | Command::Gradient => {
                c.extend(["separation_m", "temperature_K"]);
                if self.rotated {
                    c.push("phi_rad");
                }
                if cfg.command == Command::Force {
                    c.extend(["force_N", "est_abs_error_N"]);
                } else {
                    c.extend(["gradient_N_per_m", "est_abs_error_N_per_m"]);
                }
                c.extend(["terms", "mode", "converged"]);
                if cfg.output.thermal_correction {
                    c.push(if cfg.command == Command::Force { "force_T0_N" } else { "gradient_T0_N_per_m" });
                    c.push("relative_thermal_correction");
                }
            }
            Command::Efield => {
                c.extend(["separation_m", "voltage_V", "residual_V"]);
                if self.rotated {
                    c.push("phi_rad");
                }
                c.push("pfa_force_N");
                if cfg.geometry.as_ref().is_some_and(|g| g.is_circular()) {
                    c.extend(["exact_circular_force_N", "expanded_circular_force_N"]);
                }
            }
            Command::FreqShift => {
                c.extend(["separation_m", "temperature_K", "amplitude_m"]);
                if self.rotated {
                    c.push("phi_rad");
                }
                c.extend([
                    "delta_omega_sq_rad2_per_s2",
                    "est_abs_error_rad2_per_s2",
                    "omega_r_rad_per_s",
                    "linear_delta_omega_sq_rad2_per_s2",
                    "linear_omega_r_rad_per_s",
                    "terms",
                    "mode",
                    "converged",
                ]);
            }
            Command::RatioSweep => c.extend(["axis_ratio", "phi_rad", "G", "H_over_B"]),
        }
        c
    }

    fn row(&self, p: &Point) -> Result<Row, CliError> {
        match self.cfg.command {
            Command::Force => self.casimir_row(p, casimir_force),
            Command::Gradient => self.casimir_row(p, casimir_gradient),
            Command::Efield => self.efield_row(p),
            Command::FreqShift => self.shift_row(p),
            Command::RatioSweep => unreachable!("ratio sweeps are tabulated directly"),
        }
    }

    fn casimir_row(&self, p: &Point, eval: Evaluator) -> Result<Row, CliError> {
        let geom = self.geometry(p)?;
        let t = p.temperature.expect("validated");
        let env = Environment::new(p.separation, t);
        let warnings = validate_geometry(&geom, &env)?.warnings;
        let warm = settle(eval(&geom, &env, self.material(), &self.quadrature))?;
        let mut cells = vec![Cell::Real(p.separation), Cell::Real(t)];
        if self.rotated {
            cells.push(Cell::Real(p.phi.unwrap_or(0.0)));
        }
        let mut converged = warm.converged;
        let extra = if self.cfg.output.thermal_correction {
            let cold = settle(eval(&geom, &Environment::new(p.separation, 0.0), self.material(), &self.quadrature))?;
            converged &= cold.converged;
            vec![Cell::Real(cold.value), Cell::Real((warm.value - cold.value) / warm.value)]
        } else {
            Vec::new()
        };
        cells.extend([
            Cell::Real(warm.value),
            Cell::Real(warm.error),
            Cell::Count(warm.terms),
            Cell::Text(mode_name(t).into()),
            Cell::Flag(converged),
        ]);
        cells.extend(extra);
        Ok(Row {
            cells,
            warnings,
            converged,
        })
    }

    fn efield_row(&self, p: &Point) -> Result<Row, CliError> {
        let geom = self.geometry(p)?;
        let warnings = validate_geometry(&geom, &Environment::new(p.separation, 0.0))?.warnings;
        let bias = p.bias(self.cfg);
        let mut cells = vec![Cell::Real(p.separation), Cell::Real(bias.voltage), Cell::Real(bias.residual)];
        if self.rotated {
            cells.push(Cell::Real(p.phi.unwrap_or(0.0)));
        }
        cells.push(Cell::Real(pfa_electric_force(&geom, p.separation, &bias)?));
        let g = self.cfg.geometry.as_ref().expect("validated");
        if g.is_circular() {
            cells.push(Cell::Real(exact_circular_electric_force(g.lateral, p.separation, &bias, g.length)?));
            cells.push(Cell::Real(expanded_electric_force(g.lateral, p.separation, &bias, g.length)?));
        }
        Ok(Row {
            cells,
            warnings,
            converged: true,
        })
    }

    fn shift_row(&self, p: &Point) -> Result<Row, CliError> {
        let geom = self.geometry(p)?;
        let t = p.temperature.expect("validated");
        let env = Environment::new(p.separation, t);
        let warnings = validate_geometry(&geom, &env)?.warnings;
        let osc = self.cfg.oscillator.as_ref().expect("validated").build(p.amplitude)?;
        let (mat, q) = (self.material(), &self.quadrature);
        let shift = settle(frequency_shift_nonlinear(&geom, &env, mat, &osc, q))?;
        let squared = osc.omega0 * osc.omega0 + shift.value;
        if shift.converged && !(squared > 0.0) {
            return Err(CasimirError::Domain {
                function: "freq-shift",
                detail: "the Casimir force destabilises the oscillator".into(),
            }
            .into());
        }
        let (linear, linear_omega, linear_ok) = match frequency_shift_linear(&geom, &env, mat, &osc, q) {
            Ok(l) => (l.delta_omega_sq, l.omega_r_first_order, true),
            Err(CasimirError::Convergence { .. }) => (f64::NAN, f64::NAN, false),
            Err(e) => return Err(e.into()),
        };
        let mut cells = vec![Cell::Real(p.separation), Cell::Real(t), Cell::Real(osc.amplitude)];
        if self.rotated {
            cells.push(Cell::Real(p.phi.unwrap_or(0.0)));
        }
        let converged = shift.converged && linear_ok;
        cells.extend([
            Cell::Real(shift.value),
            Cell::Real(shift.error),
            Cell::Real(squared.sqrt()),
            Cell::Real(linear),
            Cell::Real(linear_omega),
            Cell::Count(shift.terms),
            Cell::Text(mode_name(t).into()),
            Cell::Flag(converged),
        ]);
        Ok(Row {
            cells,
            warnings,
            converged,
        })
    }
}

fn ratio_table(cfg: &RunConfig, columns: Vec<&'static str>) -> Table {
    let sweep = cfg.sweep.as_ref().expect("validated");
    let mut table = Table::new(columns);
    for &ratio in &cfg.ratio.as_ref().expect("validated").axis_ratios {
        for phi in sweep.points() {
            let r = rotation_factor(ratio, 1.0, phi);
            table.rows.push(vec![Cell::Real(ratio), Cell::Real(phi), Cell::Real(r.g), Cell::Real(r.h)]);
        }
    }
    table
}

/// Runs a resolved config. Points are evaluated in parallel on a pool of
/// `threads` workers (rayon's default when `None`); rows keep sweep order.
pub fn run(cfg: &RunConfig, threads: Option<usize>) -> Result<RunOutput, CliError> {
    let material = match &cfg.material {
        Some(m) => Some(m.build()?),
        None => None,
    };
    let ctx = Context {
        cfg,
        material,
        quadrature: cfg.quadrature.build(),
        rotated: cfg.geometry.as_ref().is_some_and(|g| g.variant == Variant::Rotated),
    };
    let columns = ctx.columns();
    if cfg.command == Command::RatioSweep {
        return Ok(RunOutput {
            table: ratio_table(cfg, columns),
            warnings: Vec::new(),
            unconverged: 0,
        });
    }

    let base = Point::base(cfg);
    let points: Vec<Point> = match &cfg.sweep {
        Some(s) => s.points().into_iter().map(|x| base.with(Some((s.variable, x)))).collect(),
        None => vec![base],
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    let rows: Vec<Result<Row, CliError>> = pool.install(|| points.par_iter().map(|p| ctx.row(p)).collect());

    let mut table = Table::new(columns);
    let mut warnings: Vec<String> = Vec::new();
    let mut unconverged = 0;
    for row in rows {
        let row = row?;
        for w in row.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        unconverged += usize::from(!row.converged);
        table.rows.push(row.cells);
    }
    Ok(RunOutput {
        table,
        warnings,
        unconverged,
    })
}

/// Serialises the table in the configured format; CSV carries the resolved
/// config as a `#` comment block.
pub fn render(cfg: &RunConfig, out: &RunOutput) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match cfg.output.format {
        Format::Csv => out.table.write_csv(&mut buf, &cfg.to_toml())?,
        Format::Json => {
            let config = serde_json::to_value(cfg).map_err(|e| CliError::Io(e.into()))?;
            serde_json::to_writer_pretty(&mut buf, &out.table.to_json(config)).map_err(|e| CliError::Io(e.into()))?;
            buf.write_all(b"\n")?;
        }
    }
    Ok(buf)
}
