use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hepta::exact::{self, ExactOptions};
use hepta::floating::{self, FloatOptions};
use hepta::factor::DEFAULT_TOL;
use hepta_bench::{exact_instance, exact_rhs, float_instance, float_rhs};

fn det(c: &mut Criterion) {
    let mut g = c.benchmark_group("det");
    for n in [256, 1024, 4096] {
        g.throughput(Throughput::Elements(n as u64));
        let hf = float_instance(n);
        g.bench_with_input(BenchmarkId::new("float", n), &hf, |b, h| {
            b.iter(|| floating::determinant(black_box(h), DEFAULT_TOL).unwrap())
        });
    }
    for n in [32, 128] {
        let h = exact_instance(n);
        g.bench_with_input(BenchmarkId::new("exact", n), &h, |b, h| {
            b.iter(|| exact::determinant(black_box(h)).unwrap())
        });
    }
    g.finish();
}

fn inv(c: &mut Criterion) {
    let mut g = c.benchmark_group("inv");
    g.sample_size(20);
    for n in [128, 256, 512] {
        let hf = float_instance(n);
        let opts = FloatOptions::default();
        g.bench_with_input(BenchmarkId::new("float", n), &hf, |b, h| {
            b.iter(|| floating::invert(black_box(h), &opts).unwrap())
        });
    }
    for n in [16, 32] {
        let h = exact_instance(n);
        let opts = ExactOptions::default();
        g.bench_with_input(BenchmarkId::new("exact", n), &h, |b, h| {
            b.iter(|| exact::invert(black_box(h), &opts).unwrap())
        });
    }
    g.finish();
}

fn solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    for n in [256, 1024, 4096] {
        let hf = float_instance(n);
        let r = float_rhs(&hf);
        g.bench_with_input(BenchmarkId::new("float", n), &(hf, r), |b, (h, r)| {
            b.iter(|| floating::solve_via_lu(black_box(h), r, DEFAULT_TOL).unwrap())
        });
    }
    for n in [32, 128] {
        let h = exact_instance(n);
        let r = exact_rhs(&h);
        let opts = ExactOptions::default();
        g.bench_with_input(BenchmarkId::new("exact", n), &(h, r), |b, (h, r)| {
            b.iter(|| exact::solve_via_lu(black_box(h), r, &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, det, inv, solve);
criterion_main!(benches);
