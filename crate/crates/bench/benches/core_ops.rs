//! Benchmarks for the numerical kernels on representative parameters.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use optowork_core::gaussian::solve_lyapunov;
use optowork_core::system1::{
    closed_form_blocks, drift_matrix, noise_matrix, steady_state_cm, System1Params,
};
use optowork_core::system2::{optic_optic_cm, tripartite_cm, System2Params};
use optowork_core::thermo::{work_report, MeasurementKind};
use optowork_core::{gaussian::logarithmic_negativity, TwoModeStandardForm};

fn reference_system1() -> System1Params {
    System1Params::from_cooperativity(1.0, 0.05, 34.0, 1.5, 1.0).unwrap()
}

fn bench_lyapunov(c: &mut Criterion) {
    let p = reference_system1();
    let a = drift_matrix(&p);
    let d = noise_matrix(&p);
    c.bench_function("solve_lyapunov_8x8", |b| {
        b.iter(|| solve_lyapunov(black_box(&a), black_box(&d)).unwrap())
    });
    c.bench_function("steady_state_cm", |b| {
        b.iter(|| steady_state_cm(black_box(&p)).unwrap())
    });
}

fn bench_closed_forms(c: &mut Criterion) {
    let p = reference_system1();
    c.bench_function("closed_form_blocks_with_negativity", |b| {
        b.iter(|| {
            let blocks = closed_form_blocks(black_box(&p));
            logarithmic_negativity(&blocks.mirror_mirror)
        })
    });
}

fn bench_phase_evolution(c: &mut Criterion) {
    let p = System2Params::new(1.5, std::f64::consts::PI).unwrap();
    c.bench_function("tripartite_cm", |b| b.iter(|| tripartite_cm(black_box(&p))));
    c.bench_function("optic_optic_cm", |b| {
        b.iter(|| optic_optic_cm(black_box(&p)).unwrap())
    });
}

fn bench_work_report(c: &mut Criterion) {
    let f = TwoModeStandardForm::new(2.0, 1.5, 1.2).unwrap();
    c.bench_function("work_report_homodyne", |b| {
        b.iter(|| work_report(black_box(&f), MeasurementKind::Homodyne))
    });
}

criterion_group!(
    benches,
    bench_lyapunov,
    bench_closed_forms,
    bench_phase_evolution,
    bench_work_report
);
criterion_main!(benches);
