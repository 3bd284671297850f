use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tripartite_core::{
    analytic_jacobian, default_sign_tolerance, general_eigenvalues, integrate, preset,
    replicator_field, run_sweep, stability_report, IntegratorConfig, NamedSweep, PresetName,
    StrategyState,
};

fn field(c: &mut Criterion) {
    let p = preset(PresetName::Condition1).params;
    let s = StrategyState::new(0.3, 0.6, 0.2).unwrap();
    c.bench_function("replicator_field", |b| {
        b.iter(|| replicator_field(black_box(&p), black_box(&s)))
    });
    c.bench_function("analytic_jacobian", |b| {
        b.iter(|| analytic_jacobian(black_box(&p), black_box(&s)))
    });
    let j = analytic_jacobian(&p, &s);
    c.bench_function("general_eigenvalues", |b| {
        b.iter(|| general_eigenvalues(black_box(j.entries())))
    });
}

fn stability(c: &mut Criterion) {
    let p = preset(PresetName::Condition3).params;
    let tol = default_sign_tolerance(&p);
    c.bench_function("stability_report", |b| {
        b.iter(|| stability_report(black_box(&p), tol))
    });
}

fn dynamics(c: &mut Criterion) {
    let sc = preset(PresetName::Condition1);
    let config = IntegratorConfig::default();
    c.bench_function("integrate_t200", |b| {
        b.iter(|| integrate(black_box(&sc.params), sc.initial, &config).unwrap())
    });
}

fn sweeps(c: &mut Criterion) {
    let spec = NamedSweep::DischargeCost.spec(IntegratorConfig::default());
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("cdj", |b| b.iter(|| run_sweep(black_box(&spec)).unwrap()));
    group.finish();
}

criterion_group!(benches, field, stability, dynamics, sweeps);
criterion_main!(benches);
