//! Physical invariants of the public API over randomised inputs.

use casimir_core::{
    casimir_force, casimir_gradient, frequency_shift_linear, frequency_shift_nonlinear, ideal_metal_force_t0,
    pfa_electric_force, rotation_factor, zero_temperature_force, BiasState, Environment, LensGeometry,
    OscillatorParams, PermittivityModel, QuadratureSpec, Semiaxes,
};
use proptest::prelude::*;

fn lens(a_axis: f64, b_axis: f64) -> LensGeometry {
    LensGeometry::symmetric(Semiaxes::new(a_axis, b_axis), b_axis / 2.0, 1e-3)
}

fn q() -> QuadratureSpec {
    QuadratureSpec::with_rel_tol(1e-10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ideal_metal_force_scales_as_separation_to_minus_seven_halves(
        a in 100e-9..2e-6f64,
        lambda in 1.1..3.0f64,
        ratio in 1.0..1.5f64,
    ) {
        let g = lens(100e-6 * ratio, 100e-6);
        let near = zero_temperature_force(&g, a, &PermittivityModel::IdealMetal, &q()).unwrap().value;
        let far = zero_temperature_force(&g, lambda * a, &PermittivityModel::IdealMetal, &q()).unwrap().value;
        prop_assert!((far / near - lambda.powf(-3.5)).abs() < 1e-8 * lambda.powf(-3.5));
        let closed = ideal_metal_force_t0(&g, a);
        prop_assert!((near / closed - 1.0).abs() < 1e-8);
    }

    #[test]
    fn force_is_linear_in_cylinder_length(a in 150e-9..3e-6f64, scale in 0.1..10.0f64) {
        let g = lens(120e-6, 100e-6);
        let env = Environment::new(a, 300.0);
        let mat = PermittivityModel::gold_drude();
        let base = casimir_force(&g, &env, &mat, &q()).unwrap().value;
        let scaled = casimir_force(&g.clone().with_length(scale * 1e-3), &env, &mat, &q()).unwrap().value;
        prop_assert!((scaled / base - scale).abs() < 1e-12 * scale);
    }

    // Drude permittivity lies below the plasma one on the imaginary axis and
    // both reflect less than a perfect mirror, so the attractions are ordered.
    #[test]
    fn material_models_order_the_attraction(a in 150e-9..5e-6f64, t in 0.0..350.0f64) {
        let g = lens(100e-6, 100e-6);
        let env = Environment::new(a, t);
        let f = |m: PermittivityModel| casimir_force(&g, &env, &m, &q()).unwrap().value;
        let (drude, plasma, ideal) =
            (f(PermittivityModel::gold_drude()), f(PermittivityModel::gold_plasma()), f(PermittivityModel::IdealMetal));
        prop_assert!(ideal < plasma && plasma < drude && drude < 0.0, "{ideal} {plasma} {drude}");
    }

    #[test]
    fn gradient_is_positive_and_steeper_than_force_over_separation(a in 150e-9..3e-6f64, t in 0.0..350.0f64) {
        let g = lens(110e-6, 100e-6);
        let env = Environment::new(a, t);
        let mat = PermittivityModel::gold_plasma();
        let force = casimir_force(&g, &env, &mat, &q()).unwrap().value;
        let grad = casimir_gradient(&g, &env, &mat, &q()).unwrap().value;
        // a force falling faster than 1/a has |F'| > |F|/a
        prop_assert!(grad > 0.0 && grad * a > -force);
    }

    #[test]
    fn electric_force_is_symmetric_about_the_residual_potential(
        a in 50e-9..2e-6f64,
        v0 in -0.1..0.1f64,
        dv in 0.01..1.0f64,
    ) {
        let g = lens(130e-6, 100e-6);
        let above = pfa_electric_force(&g, a, &BiasState::new(v0 + dv, v0)).unwrap();
        let below = pfa_electric_force(&g, a, &BiasState::new(v0 - dv, v0)).unwrap();
        let doubled = pfa_electric_force(&g, a, &BiasState::new(v0 + 2.0 * dv, v0)).unwrap();
        prop_assert!(above < 0.0);
        prop_assert!((above / below - 1.0).abs() < 1e-12);
        prop_assert!((doubled / above - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_factor_is_bounded_and_periodic(ratio in 1.0..3.0f64, phi in 0.0..std::f64::consts::PI) {
        let r = rotation_factor(ratio, 1.0, phi);
        let floor = ratio.powf(-1.5);
        prop_assert!(r.g <= 1.0 + 1e-15 && r.g >= floor - 1e-15);
        prop_assert!(r.h >= 1.0 - 1e-15 && r.h <= ratio + 1e-15);
        let shifted = rotation_factor(ratio, 1.0, phi + std::f64::consts::PI);
        prop_assert!((shifted.g - r.g).abs() < 1e-12);
        let mirrored = rotation_factor(ratio, 1.0, -phi);
        prop_assert!((mirrored.g - r.g).abs() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    // The nonlinear shift exceeds the linear one by O(κ²), κ = A_z/a.
    #[test]
    fn nonlinear_shift_reduces_to_linear_for_small_amplitudes(a in 200e-9..1e-6f64, kappa in 1e-3..0.05f64) {
        let g = lens(120e-6, 100e-6);
        let env = Environment::new(a, 300.0);
        let mat = PermittivityModel::gold_drude();
        let osc = OscillatorParams::new(2.0 * std::f64::consts::PI * 700.0, 1e3, kappa * a);
        let nl = frequency_shift_nonlinear(&g, &env, &mat, &osc, &q()).unwrap().value;
        let lin = frequency_shift_linear(&g, &env, &mat, &osc, &q()).unwrap().delta_omega_sq;
        let excess = nl / lin - 1.0;
        prop_assert!(excess > 0.0 && excess < 6.0 * kappa * kappa, "kappa {kappa}: excess {excess}");
    }
}
