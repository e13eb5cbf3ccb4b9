//! Tabulated `ε(iξ)` read from two-column text (`xi_rad_per_s epsilon`,
//! `#` comments), interpolated linearly in `ln ε` against `ln ξ`.

use std::path::Path;

use crate::error::{CasimirError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PermittivityTable {
    ln_xi: Vec<f64>,
    ln_eps: Vec<f64>,
    xi: Vec<f64>,
}

impl PermittivityTable {
    /// Builds a table from `(ξ, ε)` pairs. Rows carry their 1-based line
    /// numbers for error reporting.
    fn from_rows(rows: &[(usize, f64, f64)]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(CasimirError::Table {
                line: rows.last().map_or(0, |r| r.0),
                message: "at least two data points are required".into(),
            });
        }
        for &(line, xi, eps) in rows {
            if !(xi > 0.0) || !xi.is_finite() {
                return Err(CasimirError::Table {
                    line,
                    message: format!("frequency {xi} must be positive"),
                });
            }
            if !(eps >= 1.0) || !eps.is_finite() {
                return Err(CasimirError::Table {
                    line,
                    message: format!("permittivity {eps} must be at least 1"),
                });
            }
        }
        for w in rows.windows(2) {
            let (_, xi0, eps0) = w[0];
            let (line, xi1, eps1) = w[1];
            if xi1 <= xi0 {
                return Err(CasimirError::Table {
                    line,
                    message: format!("frequency grid not strictly increasing ({xi1} after {xi0})"),
                });
            }
            if eps1 > eps0 {
                return Err(CasimirError::Table {
                    line,
                    message: format!("permittivity must not increase along the imaginary axis ({eps1} after {eps0})"),
                });
            }
        }
        Ok(PermittivityTable {
            ln_xi: rows.iter().map(|r| r.1.ln()).collect(),
            ln_eps: rows.iter().map(|r| r.2.ln()).collect(),
            xi: rows.iter().map(|r| r.1).collect(),
        })
    }

    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        let rows: Vec<_> = points.iter().enumerate().map(|(i, &(x, e))| (i + 1, x, e)).collect();
        Self::from_rows(&rows)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(CasimirError::Table {
                    line,
                    message: format!("expected two columns, found {}", fields.len()),
                });
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| CasimirError::Table {
                    line,
                    message: format!("cannot parse number '{s}'"),
                })
            };
            rows.push((line, parse(fields[0])?, parse(fields[1])?));
        }
        Self::from_rows(&rows)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xi[0], *self.xi.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    pub fn interpolate(&self, xi: f64) -> Result<f64> {
        let (min, max) = self.range();
        if !(xi >= min && xi <= max) {
            return Err(CasimirError::Extrapolation { xi, min, max });
        }
        let x = xi.ln();
        let hi = self.ln_xi.partition_point(|&p| p < x).clamp(1, self.len() - 1);
        let lo = hi - 1;
        let t = (x - self.ln_xi[lo]) / (self.ln_xi[hi] - self.ln_xi[lo]);
        Ok((self.ln_eps[lo] + t * (self.ln_eps[hi] - self.ln_eps[lo])).exp())
    }
}

/// Reads a tabulated permittivity file into a model.
pub fn load_tabulated_permittivity(path: impl AsRef<Path>) -> Result<super::PermittivityModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CasimirError::Table {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(super::PermittivityModel::Tabulated(PermittivityTable::parse(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_table() {
        let t = PermittivityTable::parse("# xi eps\n1e14 100\n1e16 1.5\n").unwrap();
        assert_eq!(t.len(), 2);
        // geometric midpoint: ε = √(100 · 1.5)
        let mid = t.interpolate(1e15).unwrap();
        assert!((mid - (150.0f64).sqrt()).abs() < 1e-12);
        assert!((t.interpolate(1e14).unwrap() - 100.0).abs() < 1e-12);
    }

    #[test]
    fn unsorted_grid_reports_line() {
        let err = PermittivityTable::parse("1e14 100\n# c\n1e16 2\n1e15 1.5\n").unwrap_err();
        assert_eq!(
            err,
            CasimirError::Table {
                line: 4,
                message: "frequency grid not strictly increasing (1000000000000000 after 10000000000000000)".into()
            }
        );
    }

    #[test]
    fn malformed_and_unphysical_lines() {
        assert!(matches!(
            PermittivityTable::parse("1e14 100\n1e15 abc\n"),
            Err(CasimirError::Table { line: 2, .. })
        ));
        assert!(matches!(
            PermittivityTable::parse("1e14 100\n1e15 0.5\n"),
            Err(CasimirError::Table { line: 2, .. })
        ));
        assert!(matches!(
            PermittivityTable::parse("1e14 100 3\n"),
            Err(CasimirError::Table { line: 1, .. })
        ));
        assert!(PermittivityTable::parse("1e14 100\n").is_err());
    }

    #[test]
    fn out_of_range_is_an_error() {
        let t = PermittivityTable::new(&[(1e14, 100.0), (1e16, 1.5)]).unwrap();
        assert!(matches!(t.interpolate(1e13), Err(CasimirError::Extrapolation { .. })));
        assert!(matches!(t.interpolate(1e17), Err(CasimirError::Extrapolation { .. })));
    }
}
