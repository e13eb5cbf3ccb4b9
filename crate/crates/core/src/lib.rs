//! Thermal Casimir force, force gradient, electrostatic calibration force and
//! oscillator frequency shift for an elliptic cylindrical lens above a plate,
//! in the proximity force approximation with Lifshitz reflection coefficients.
//!
//! All public quantities are SI. Attractive forces are negative, gradients
//! `∂F/∂a` positive.
//!
//! ```
//! use casimir_core::{casimir_force, Environment, LensGeometry, PermittivityModel, QuadratureSpec, Semiaxes};
//!
//! let lens = LensGeometry::symmetric(Semiaxes::new(120e-6, 100e-6), 50e-6, 1e-3);
//! let env = Environment::new(1e-6, 300.0);
//! let f = casimir_force(&lens, &env, &PermittivityModel::gold_plasma(), &QuadratureSpec::with_rel_tol(1e-6)).unwrap();
//! assert!(f.value < 0.0);
//! ```

pub mod constants;
pub mod dielectric;
pub mod electrostatics;
pub mod engine;
mod error;
pub mod geometry;
pub mod oscillator;
pub mod quad;
pub mod special;

pub use constants::{PhysicalConstants, CODATA_2018};
pub use dielectric::{
    epsilon_at_imaginary, load_tabulated_permittivity, reflection_coefficients, PermittivityModel, PermittivityTable,
    ReflectionPair,
};
pub use electrostatics::{
    asymmetric_electric_force, exact_circular_electric_force, expanded_electric_force, pfa_electric_force, BiasState,
};
pub use engine::{
    casimir_force, casimir_gradient, classical_term_force, direct_pfa_force_oracle, ideal_metal_force_t0,
    ideal_metal_gradient_t0, rotated_direct_oracle, rotated_force, rotated_gradient, rotation_factor,
    two_halves_force, two_halves_gradient, zero_temperature_force, zero_temperature_gradient, ForceMode, ForceResult,
    QuadratureSpec, RotationFactor,
};
pub use error::{CasimirError, Result};
pub use geometry::{
    validate_geometry, Environment, LensGeometry, LensShape, MatsubaraPoint, Semiaxes, ValidityReport,
};
pub use oscillator::{
    frequency_shift_direct_oracle, frequency_shift_for_variant, frequency_shift_linear, frequency_shift_nonlinear,
    LinearShift, OscillatorParams,
};
pub use special::{bessel_i1, bessel_i1_scaled, gauss_half_integral, polylog, polylog_exp, SeriesControl};
