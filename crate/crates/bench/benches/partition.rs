use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use sos_core::sampling::bench_parameters;
use sos_core::{enumerate_z, partition_function_det, EllipticNome, ThetaEvaluator};

fn theta(c: &mut Criterion) {
    let th = ThetaEvaluator::new(EllipticNome::new(0.4421).unwrap());
    let x = Complex64::new(1.3, 0.4);
    c.bench_function("theta", |b| b.iter(|| th.theta(black_box(x)).unwrap()));
}

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinant");
    for l in [2, 4, 6, 10, 20, 30] {
        let params = bench_parameters(l, l as u64).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(l), &params, |b, p| {
            b.iter(|| partition_function_det(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    for l in 2..=6 {
        let params = bench_parameters(l, l as u64).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(l), &params, |b, p| {
            b.iter(|| enumerate_z(black_box(p)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, theta, determinant, enumeration);
criterion_main!(benches);
