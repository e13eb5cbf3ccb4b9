//! Shared fixtures for the benchmarks.

use casimir_core::{Environment, LensGeometry, OscillatorParams, Semiaxes};

/// The reference lens: A = 120 µm, B = 100 µm, h = 50 µm, L = 1 mm.
pub fn reference_lens() -> LensGeometry {
    LensGeometry::symmetric(Semiaxes::new(120e-6, 100e-6), 50e-6, 1e-3)
}

pub fn room_temperature(separation: f64) -> Environment {
    Environment::new(separation, 300.0)
}

pub fn reference_oscillator(amplitude: f64) -> OscillatorParams {
    OscillatorParams::new(2.0 * std::f64::consts::PI * 700.0, 1.0e4, amplitude)
}
