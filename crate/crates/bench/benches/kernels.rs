use std::hint::black_box;

use casimir_bench::{reference_lens, reference_oscillator, room_temperature};
use casimir_core::{
    bessel_i1_scaled, casimir_force, casimir_gradient, frequency_shift_nonlinear, polylog_exp, PermittivityModel,
    QuadratureSpec, SeriesControl,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn special_functions(c: &mut Criterion) {
    let ctrl = SeriesControl::default();
    let mut group = c.benchmark_group("polylog");
    for &mu in &[-3.0, -0.5, -1e-3] {
        group.bench_with_input(BenchmarkId::new("half", mu), &mu, |b, &mu| {
            b.iter(|| polylog_exp(0.5, black_box(mu), &ctrl).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("minus_half", mu), &mu, |b, &mu| {
            b.iter(|| polylog_exp(-0.5, black_box(mu), &ctrl).unwrap())
        });
    }
    group.finish();
    c.bench_function("bessel_i1_scaled", |b| {
        b.iter(|| bessel_i1_scaled(black_box(12.5), &ctrl).unwrap() + bessel_i1_scaled(black_box(75.0), &ctrl).unwrap())
    });
}

fn force(c: &mut Criterion) {
    let lens = reference_lens();
    let q = QuadratureSpec::default();
    let mut group = c.benchmark_group("force");
    group.sample_size(10);
    for (name, model) in [
        ("ideal", PermittivityModel::IdealMetal),
        ("plasma", PermittivityModel::gold_plasma()),
        ("drude", PermittivityModel::gold_drude()),
    ] {
        let env = room_temperature(500e-9);
        group.bench_function(BenchmarkId::new("force", name), |b| {
            b.iter(|| casimir_force(&lens, black_box(&env), &model, &q).unwrap())
        });
        group.bench_function(BenchmarkId::new("gradient", name), |b| {
            b.iter(|| casimir_gradient(&lens, black_box(&env), &model, &q).unwrap())
        });
    }
    group.finish();
}

fn frequency_shift(c: &mut Criterion) {
    let lens = reference_lens();
    let q = QuadratureSpec::default();
    let env = room_temperature(500e-9);
    let osc = reference_oscillator(150e-9);
    let model = PermittivityModel::gold_plasma();
    let mut group = c.benchmark_group("frequency_shift");
    group.sample_size(10);
    group.bench_function("nonlinear_plasma", |b| {
        b.iter(|| frequency_shift_nonlinear(&lens, black_box(&env), &model, &osc, &q).unwrap())
    });
    group.finish();
}

criterion_group!(benches, special_functions, force, frequency_shift);
criterion_main!(benches);
