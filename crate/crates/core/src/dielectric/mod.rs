//! Permittivity along the imaginary frequency axis and the TM/TE reflection
//! coefficients in the dimensionless `(ζ, v)` variables.

mod table;

pub use table::{load_tabulated_permittivity, PermittivityTable};

use crate::constants::{ev_to_rad_per_s, CODATA_2018};
use crate::error::{CasimirError, Result};

/// Gold plasma frequency, eV.
pub const GOLD_PLASMA_FREQUENCY_EV: f64 = 9.0;
/// Gold relaxation frequency, eV.
pub const GOLD_RELAXATION_FREQUENCY_EV: f64 = 0.035;

#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    IdealMetal,
    /// `ε = 1 + ω_p²/ξ²`.
    Plasma { omega_p: f64 },
    /// `ε = 1 + ω_p²/(ξ(ξ+γ))`.
    Drude { omega_p: f64, gamma: f64 },
    /// Log-log interpolated table.
    Tabulated(PermittivityTable),
}

impl PermittivityModel {
    pub fn gold_drude() -> Self {
        PermittivityModel::Drude {
            omega_p: ev_to_rad_per_s(GOLD_PLASMA_FREQUENCY_EV),
            gamma: ev_to_rad_per_s(GOLD_RELAXATION_FREQUENCY_EV),
        }
    }

    pub fn gold_plasma() -> Self {
        PermittivityModel::Plasma {
            omega_p: ev_to_rad_per_s(GOLD_PLASMA_FREQUENCY_EV),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PermittivityModel::IdealMetal => "ideal-metal",
            PermittivityModel::Plasma { .. } => "plasma",
            PermittivityModel::Drude { .. } => "drude",
            PermittivityModel::Tabulated(_) => "tabulated",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PermittivityModel::IdealMetal | PermittivityModel::Tabulated(_) => Ok(()),
            PermittivityModel::Plasma { omega_p } => {
                if !(omega_p > 0.0) || !omega_p.is_finite() {
                    return Err(CasimirError::invalid("plasma frequency must be positive"));
                }
                Ok(())
            }
            PermittivityModel::Drude { omega_p, gamma } => {
                if !(omega_p > 0.0) || !omega_p.is_finite() {
                    return Err(CasimirError::invalid("plasma frequency must be positive"));
                }
                if !(gamma > 0.0) || !gamma.is_finite() {
                    return Err(CasimirError::invalid("relaxation frequency must be positive"));
                }
                Ok(())
            }
        }
    }

    /// `ε(iξ)`. Returns `+∞` for the ideal metal and for Drude/plasma at `ξ = 0`;
    /// those cases are resolved analytically in [`Self::reflection`].
    pub fn epsilon_at_imaginary(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(CasimirError::domain("epsilon", format!("frequency {xi} must be non-negative")));
        }
        match self {
            PermittivityModel::IdealMetal => Ok(f64::INFINITY),
            PermittivityModel::Plasma { omega_p } => {
                if xi == 0.0 {
                    Ok(f64::INFINITY)
                } else {
                    let r = omega_p / xi;
                    Ok(1.0 + r * r)
                }
            }
            PermittivityModel::Drude { omega_p, gamma } => {
                if xi == 0.0 {
                    Ok(f64::INFINITY)
                } else {
                    Ok(1.0 + omega_p * omega_p / (xi * (xi + gamma)))
                }
            }
            PermittivityModel::Tabulated(t) => t.interpolate(xi),
        }
    }

    /// Reflection coefficients at dimensionless frequency `zeta = 2aξ/c` and
    /// `v = 2aq ≥ zeta`, for separation `separation`.
    pub fn reflection(&self, zeta: f64, v: f64, separation: f64) -> Result<ReflectionPair> {
        if !(v > 0.0) || !(zeta >= 0.0) || v < zeta {
            return Err(CasimirError::domain(
                "reflection coefficients",
                format!("require v ≥ ζ ≥ 0 and v > 0, got ζ = {zeta}, v = {v}"),
            ));
        }
        Ok(self.response(zeta, separation)?.at(v))
    }

    /// Freezes the frequency dependence at `zeta`, so that repeated calls over
    /// `v` evaluate the permittivity only once.
    pub fn response(&self, zeta: f64, separation: f64) -> Result<FrequencyResponse> {
        if !(zeta >= 0.0) || !zeta.is_finite() {
            return Err(CasimirError::domain("reflection coefficients", format!("ζ = {zeta} must be non-negative")));
        }
        if zeta == 0.0 {
            // The plasma TE coefficient keeps the finite limit ζ²(ε−1) → (2aω_p/c)²;
            // Drude and tabulated media lose TE reflection.
            return Ok(match self {
                PermittivityModel::IdealMetal => FrequencyResponse::Ideal,
                PermittivityModel::Plasma { omega_p } => FrequencyResponse::StaticPlasma {
                    k: 2.0 * separation * omega_p / CODATA_2018.c,
                },
                PermittivityModel::Drude { .. } | PermittivityModel::Tabulated(_) => FrequencyResponse::StaticTmOnly,
            });
        }
        match self {
            PermittivityModel::IdealMetal => Ok(FrequencyResponse::Ideal),
            _ => {
                let xi = CODATA_2018.c * zeta / (2.0 * separation);
                let eps = self.epsilon_at_imaginary(xi)?;
                Ok(FrequencyResponse::Finite { eps, zeta })
            }
        }
    }
}

/// `ε(iξ)` for `model`; see [`PermittivityModel::epsilon_at_imaginary`].
pub fn epsilon_at_imaginary(model: &PermittivityModel, xi: f64) -> Result<f64> {
    model.epsilon_at_imaginary(xi)
}

/// Reflection pair at `(ζ, v)`; see [`PermittivityModel::reflection`].
pub fn reflection_coefficients(model: &PermittivityModel, zeta: f64, v: f64, separation: f64) -> Result<ReflectionPair> {
    model.reflection(zeta, v, separation)
}

/// Reflection properties of a medium at one fixed imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrequencyResponse {
    Ideal,
    Finite { eps: f64, zeta: f64 },
    /// Plasma at `ζ = 0`; `k = 2aω_p/c`.
    StaticPlasma { k: f64 },
    /// Dissipative media at `ζ = 0`: `r_TM = 1`, `r_TE = 0`.
    StaticTmOnly,
}

impl FrequencyResponse {
    /// Coefficients at `v`; the caller guarantees `v ≥ ζ`, `v > 0`.
    #[inline]
    pub fn at(&self, v: f64) -> ReflectionPair {
        match *self {
            FrequencyResponse::Ideal => ReflectionPair::IDEAL,
            FrequencyResponse::Finite { eps, zeta } => ReflectionPair::from_permittivity(eps, zeta, v),
            FrequencyResponse::StaticPlasma { k } => {
                let root = (v * v + k * k).sqrt();
                let den = v + root;
                ReflectionPair {
                    tm: 1.0,
                    te: -k * k / (den * den),
                }
            }
            FrequencyResponse::StaticTmOnly => ReflectionPair { tm: 1.0, te: 0.0 },
        }
    }
}

/// TM and TE reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub tm: f64,
    pub te: f64,
}

impl ReflectionPair {
    pub const IDEAL: ReflectionPair = ReflectionPair { tm: 1.0, te: -1.0 };

    /// Fresnel coefficients on the imaginary axis for finite permittivity `eps`.
    /// Numerators are rearranged so that `ε → 1` and `v ≫ ζ` lose no digits.
    pub fn from_permittivity(eps: f64, zeta: f64, v: f64) -> Self {
        if eps > 1e100 {
            let root = (v * v + (eps - 1.0) * zeta * zeta).sqrt();
            return ReflectionPair {
                tm: (eps * v - root) / (eps * v + root),
                te: (v - root) / (v + root),
            };
        }
        let em1 = eps - 1.0;
        let z2 = zeta * zeta;
        let root = (v * v + em1 * z2).sqrt();
        let te_den = v + root;
        let tm_den = eps * v + root;
        ReflectionPair {
            tm: em1 * ((eps + 1.0) * v * v - z2) / (tm_den * tm_den),
            te: -em1 * z2 / (te_den * te_den),
        }
    }

    /// `ln r_TM²`, `-∞` when the coefficient vanishes.
    pub fn tm_log_sq(&self) -> f64 {
        log_sq(self.tm)
    }

    pub fn te_log_sq(&self) -> f64 {
        log_sq(self.te)
    }
}

fn log_sq(r: f64) -> f64 {
    let m = r.abs();
    if m == 1.0 {
        0.0
    } else if m == 0.0 {
        f64::NEG_INFINITY
    } else {
        2.0 * m.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const A: f64 = 1e-6;

    #[test]
    fn plasma_at_plasma_frequency() {
        let m = PermittivityModel::Plasma { omega_p: 2.0e15 };
        assert_eq!(m.epsilon_at_imaginary(2.0e15).unwrap(), 2.0);
    }

    #[test]
    fn drude_tends_to_plasma() {
        let wp = 1.0e16;
        let xi = 3.0e14;
        let plasma = PermittivityModel::Plasma { omega_p: wp }.epsilon_at_imaginary(xi).unwrap();
        let drude = PermittivityModel::Drude { omega_p: wp, gamma: 1e3 }
            .epsilon_at_imaginary(xi)
            .unwrap();
        assert!((drude / plasma - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gold_drude_at_one_ev() {
        let m = PermittivityModel::gold_drude();
        let eps = m.epsilon_at_imaginary(ev_to_rad_per_s(1.0)).unwrap();
        assert!((eps - (1.0 + 81.0 / 1.035)).abs() < 1e-9);
        assert!((eps - 79.26).abs() < 0.01);
    }

    #[test]
    fn zero_frequency_is_infinite_for_metals() {
        for m in [PermittivityModel::gold_drude(), PermittivityModel::gold_plasma(), PermittivityModel::IdealMetal] {
            assert_eq!(m.epsilon_at_imaginary(0.0).unwrap(), f64::INFINITY);
        }
    }

    #[test]
    fn ideal_metal_reflects_perfectly() {
        for &(z, v) in &[(0.0, 0.3), (1.0, 1.0), (2.0, 7.5)] {
            let r = PermittivityModel::IdealMetal.reflection(z, v, A).unwrap();
            assert_eq!(r.tm * r.tm, 1.0);
            assert_eq!(r.te * r.te, 1.0);
        }
    }

    #[test]
    fn grazing_values() {
        let m = PermittivityModel::gold_plasma();
        let zeta = 0.8;
        let xi = CODATA_2018.c * zeta / (2.0 * A);
        let eps = m.epsilon_at_imaginary(xi).unwrap();
        let r = m.reflection(zeta, zeta, A).unwrap();
        let s = eps.sqrt();
        assert!((r.te - (1.0 - s) / (1.0 + s)).abs() < 1e-14);
        assert!((r.tm - (eps - s) / (eps + s)).abs() < 1e-14);
    }

    #[test]
    fn drude_zero_frequency_te_vanishes() {
        let m = PermittivityModel::gold_drude();
        let r = m.reflection(0.0, 0.7, A).unwrap();
        assert_eq!(r, ReflectionPair { tm: 1.0, te: 0.0 });
        // Fixed-γ Drude: the finite-ζ TE coefficient tends to zero as ζ → 0.
        let small = m.reflection(1e-6, 0.7, A).unwrap();
        let smaller = m.reflection(1e-7, 0.7, A).unwrap();
        assert!(smaller.te.abs() < small.te.abs());
        assert!(smaller.te.abs() < 1e-2);
    }

    #[test]
    fn zero_branch_is_continuous_for_plasma_and_ideal() {
        for m in [PermittivityModel::gold_plasma(), PermittivityModel::IdealMetal] {
            for &v in &[0.01, 0.5, 3.0, 20.0] {
                let r0 = m.reflection(0.0, v, A).unwrap();
                let r1 = m.reflection(1e-8, v, A).unwrap();
                assert!(((r1.tm - r0.tm) / r0.tm).abs() < 1e-6);
                assert!(((r1.te - r0.te) / r0.te).abs() < 1e-6, "{m:?} v={v}: {r0:?} {r1:?}");
            }
        }
    }

    #[test]
    fn plasma_zero_frequency_te_decreases_with_v() {
        let m = PermittivityModel::gold_plasma();
        let mut last = f64::INFINITY;
        for k in 1..50 {
            let v = 0.2 * k as f64;
            let r = m.reflection(0.0, v, A).unwrap();
            assert!(r.te * r.te < last);
            last = r.te * r.te;
        }
    }

    #[test]
    fn domain_checks() {
        let m = PermittivityModel::gold_plasma();
        assert!(m.reflection(2.0, 1.0, A).is_err());
        assert!(m.reflection(0.0, 0.0, A).is_err());
    }

    #[test]
    fn metal_bounds() {
        for m in [PermittivityModel::gold_plasma(), PermittivityModel::gold_drude()] {
            for &z in &[0.01, 0.3, 2.0, 15.0] {
                for &dv in &[0.0, 0.1, 1.0, 10.0, 60.0] {
                    let r = m.reflection(z, z + dv, A).unwrap();
                    assert!((0.0..=1.0).contains(&r.tm));
                    assert!((-1.0..=0.0).contains(&r.te));
                    // equality holds at grazing incidence v = ζ
                    assert!(r.tm >= r.te.abs() - 1e-15);
                }
            }
        }
    }

    #[test]
    fn log_sq_edges() {
        assert_eq!(ReflectionPair::IDEAL.tm_log_sq(), 0.0);
        assert_eq!(ReflectionPair::IDEAL.te_log_sq(), 0.0);
        assert_eq!(ReflectionPair { tm: 1.0, te: 0.0 }.te_log_sq(), f64::NEG_INFINITY);
    }

    proptest! {
        #[test]
        fn drude_coefficients_are_bounded(
            wp_ev in 1.0f64..20.0,
            gamma_ev in 1e-3f64..1.0,
            zeta in 1e-3f64..50.0,
            dv in 0.0f64..80.0,
            a in 2e-8f64..1e-5,
        ) {
            use crate::constants::ev_to_rad_per_s;
            let m = PermittivityModel::Drude { omega_p: ev_to_rad_per_s(wp_ev), gamma: ev_to_rad_per_s(gamma_ev) };
            let r = m.reflection(zeta, zeta + dv, a).unwrap();
            prop_assert!((0.0..=1.0).contains(&r.tm));
            prop_assert!((-1.0..=0.0).contains(&r.te));
            prop_assert!(r.tm >= r.te.abs() - 1e-15);
        }

        #[test]
        fn permittivity_decreases_towards_one(xi in 1e10f64..1e18, factor in 1.01f64..10.0) {
            for m in [PermittivityModel::gold_plasma(), PermittivityModel::gold_drude()] {
                let lo = m.epsilon_at_imaginary(xi).unwrap();
                let hi = m.epsilon_at_imaginary(xi * factor).unwrap();
                prop_assert!(hi < lo && hi > 1.0);
            }
        }
    }
}
