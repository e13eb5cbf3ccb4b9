//! Special functions used by the force kernels: the polylogarithm of
//! half-integer order, the modified Bessel function `I₁`, and `Γ(1/2)`.

mod bessel;
mod polylog;

pub use bessel::{bessel_i1, bessel_i1_scaled};
pub use polylog::{polylog, polylog_exp};

/// Truncation controls for the series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Relative truncation tolerance, in (0, 1).
    pub rel_tol: f64,
    /// Hard cap on summed terms.
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-12,
            max_terms: 1_000_000,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) || self.max_terms < 1 {
            return Err(crate::CasimirError::invalid(format!(
                "series control out of range: {self:?}"
            )));
        }
        Ok(())
    }
}

/// `∫₀^∞ e^{-t} t^{-1/2} dt = Γ(1/2) = √π`.
pub fn gauss_half_integral() -> f64 {
    std::f64::consts::PI.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, Tolerance};

    #[test]
    fn gauss_half_integral_matches_quadrature() {
        // t = u² removes the endpoint singularity: ∫₀^∞ 2 e^{-u²} du
        let r = integrate(|u: f64| Ok(2.0 * (-u * u).exp()), 0.0, 9.0, 4, Tolerance::relative(1e-12)).unwrap();
        assert!((r.value - gauss_half_integral()).abs() < 1e-10);
        assert!((gauss_half_integral() - 1.772_453_850_905_516).abs() < 1e-15);
    }

    #[test]
    fn prefactor_consistency() {
        // 1/(4π a²) · √π = 1/(4√π a²)
        let a = 3.7;
        let lhs = gauss_half_integral() / (4.0 * std::f64::consts::PI * a * a);
        let rhs = 1.0 / (4.0 * std::f64::consts::PI.sqrt() * a * a);
        assert!((lhs / rhs - 1.0).abs() < 1e-15);
    }

    #[test]
    fn control_validation() {
        assert!(SeriesControl::default().validate().is_ok());
        assert!(SeriesControl { rel_tol: 0.0, max_terms: 5 }.validate().is_err());
        assert!(SeriesControl { rel_tol: 1e-3, max_terms: 0 }.validate().is_err());
    }
}
