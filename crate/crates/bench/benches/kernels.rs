use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use entsep::criteria::nearest_separable;
use entsep::linalg::hermitian_eig;
use entsep::sample;
use entsep::states::{bell_state, BellState};
use entsep::Tolerances;

fn bench_eigensolver(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("hermitian_eig");
    for dim in [4usize, 6, 9] {
        let mut rng = sample::rng(1);
        let m = sample::random_hermitian(dim, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            b.iter(|| hermitian_eig(m, &tol).unwrap())
        });
    }
    group.finish();
}

fn bench_kron(c: &mut Criterion) {
    let mut group = c.benchmark_group("kron");
    for dim in [2usize, 4, 8] {
        let mut rng = sample::rng(2);
        let a = sample::random_hermitian(dim, &mut rng);
        let b = sample::random_hermitian(dim, &mut rng);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &(a, b), |bench, (a, b)| {
            bench.iter(|| a.kron(b))
        });
    }
    group.finish();
}

fn bench_nearest_separable(c: &mut Criterion) {
    let mut group = c.benchmark_group("nearest_separable");
    group.sample_size(10);
    let bell = bell_state(BellState::PhiPlus).to_density();
    group.bench_function("bell_projector", |b| {
        b.iter(|| nearest_separable(&bell, 2000, 1e-8).unwrap())
    });
    let mut rng = sample::rng(3);
    let random = sample::random_density((2, 2), &mut rng);
    group.bench_function("random_two_qubit", |b| {
        b.iter(|| nearest_separable(&random, 2000, 1e-8).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_eigensolver, bench_kron, bench_nearest_separable);
criterion_main!(benches);
