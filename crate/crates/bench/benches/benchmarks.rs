//! Benchmarks for the numerical hot paths: recurrence evaluation, root
//! isolation, the weighted integral behind every projection constant, and
//! the two cross-check oracles (disk quadrature and Monte Carlo).

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use projcon_core::projection::{lambda, lambda_kernel_quadrature, lambda_monte_carlo};
use projcon_core::quad::McConfig;
use projcon_core::{GramKernel, JacobiParams, SpaceId, SpaceKind};

fn bench_jacobi(c: &mut Criterion) {
    let params = JacobiParams::new(1.0, 2.0, 200).unwrap();
    let ev = params.evaluator();
    c.bench_function("jacobi_eval_degree_200", |b| {
        b.iter(|| ev.eval(black_box(0.312)))
    });
    let rooted = JacobiParams::new(1.5, 0.5, 100).unwrap();
    c.bench_function("jacobi_roots_degree_100", |b| {
        b.iter(|| rooted.roots().unwrap())
    });
}

fn bench_weighted_integral(c: &mut Criterion) {
    let params = JacobiParams::new(1.0, 3.0, 60).unwrap();
    c.bench_function("weighted_abs_l1_degree_60", |b| {
        b.iter(|| params.weighted_abs_l1_unit(black_box(1.0), black_box(1.5)).unwrap())
    });
}

fn bench_lambda(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda");
    group.sample_size(20);
    let harmonic = SpaceId::new(SpaceKind::Harmonic, 3, 100, 100).unwrap();
    group.bench_function("harmonic_n3_p100_q100", |b| {
        b.iter(|| lambda(black_box(harmonic)).unwrap())
    });
    let bihom = SpaceId::new(SpaceKind::Bihomogeneous, 2, 500, 501).unwrap();
    group.bench_function("bihom_n2_p500_q501", |b| {
        b.iter(|| lambda(black_box(bihom)).unwrap())
    });
    group.finish();
}

fn bench_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(10);
    let space = SpaceId::new(SpaceKind::Harmonic, 2, 2, 2).unwrap();
    group.bench_function("disk_quadrature_h22_s2", |b| {
        b.iter(|| lambda_kernel_quadrature(black_box(space)).unwrap())
    });
    let cfg = McConfig {
        samples: 100_000,
        seed: 1,
    };
    group.bench_function("monte_carlo_100k_h22_s2", |b| {
        b.iter(|| lambda_monte_carlo(black_box(space), &cfg).unwrap())
    });
    group.bench_function("gram_kernel_build_p22_s3", |b| {
        b.iter(|| {
            GramKernel::new(black_box(
                SpaceId::new(SpaceKind::Bihomogeneous, 3, 2, 2).unwrap(),
            ))
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_jacobi,
    bench_weighted_integral,
    bench_lambda,
    bench_oracles
);
criterion_main!(benches);
