use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use wormlab_core::acceptance::spread_profile;
use wormlab_core::observables::{time_grid, WindingCalculator, WindingConfig};
use wormlab_core::protocol::{teleport_sweep, ProtocolConfig};
use wormlab_core::{learned_hamiltonian, monomial_product, Monomial};

fn algebra(c: &mut Criterion) {
    let a = Monomial::new(&[1, 3, 4, 7, 9], 14).unwrap();
    let b = Monomial::new(&[2, 3, 7, 8, 10, 13], 14).unwrap();
    c.bench_function("monomial_product", |bench| {
        bench.iter(|| monomial_product(black_box(&a), black_box(&b)))
    });
    let spec = learned_hamiltonian();
    c.bench_function("operator_expansion", |bench| {
        bench.iter(|| spread_profile(black_box(&spec), 2.8).unwrap())
    });
}

fn observables(c: &mut Criterion) {
    let calc = WindingCalculator::new(&learned_hamiltonian(), WindingConfig::default()).unwrap();
    let grid = time_grid(0.0, 10.0, 0.05).unwrap();
    c.bench_function("winding_scan", |bench| {
        bench.iter(|| calc.best_time(black_box(4), &grid).unwrap())
    });
}

fn protocol(c: &mut Criterion) {
    let cfg = ProtocolConfig::default();
    let grid = time_grid(0.0, 5.0, 0.5).unwrap();
    let mut group = c.benchmark_group("protocol");
    group.sample_size(10);
    group.bench_function("teleport_sweep", |bench| {
        bench.iter(|| teleport_sweep(black_box(&cfg), &grid, false).unwrap())
    });
    group.finish();
}

criterion_group!(benches, algebra, observables, protocol);
criterion_main!(benches);
