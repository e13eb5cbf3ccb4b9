//! Fundamental constants (CODATA 2018 exact/recommended values) and unit helpers.

/// Physical constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light in vacuum, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Vacuum permittivity, F/m.
    pub eps0: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    k_b: 1.380_649e-23,
    eps0: 8.854_187_812_8e-12,
};

/// Elementary charge, C (exact in the 2019 SI).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

impl PhysicalConstants {
    /// ħc in J·m.
    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }
}

/// Converts a photon energy in eV into an angular frequency in rad/s.
pub fn ev_to_rad_per_s(energy_ev: f64) -> f64 {
    energy_ev * ELEMENTARY_CHARGE / CODATA_2018.hbar
}
