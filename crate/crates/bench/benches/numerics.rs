use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lenscert_bench::{competitor_f1_args, quarter};
use lenscert_core::specfun::{appell_f1, gauss_2f1, rat};
use lenscert_core::Ball;

fn elementary(c: &mut Criterion) {
    let mut g = c.benchmark_group("elementary");
    for prec in [128u32, 512, 2048] {
        let x = Ball::from_rational(&rat(7, 5), prec);
        g.bench_with_input(BenchmarkId::new("exp", prec), &x, |b, x| b.iter(|| black_box(x).exp().unwrap()));
        g.bench_with_input(BenchmarkId::new("arctan", prec), &x, |b, x| b.iter(|| black_box(x).arctan().unwrap()));
        g.bench_with_input(BenchmarkId::new("sin_cos", prec), &x, |b, x| b.iter(|| black_box(x).sin_cos().unwrap()));
    }
    g.finish();
}

fn hypergeometric(c: &mut Criterion) {
    let mut g = c.benchmark_group("hypergeometric");
    for prec in [128u32, 512] {
        let z = quarter(prec);
        g.bench_with_input(BenchmarkId::new("2f1_lens_n64", prec), &z, |b, z| {
            b.iter(|| gauss_2f1(&rat(1, 2), &rat(-61, 2), &rat(3, 2), black_box(z)).unwrap())
        });
        let (x, y) = competitor_f1_args(prec);
        g.bench_with_input(BenchmarkId::new("f1_diagonal", prec), &(x, y), |b, (x, y)| {
            b.iter(|| appell_f1(&rat(4, 1), &rat(-3, 2), &rat(-3, 2), &rat(5, 1), black_box(x), black_box(y)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, elementary, hypergeometric);
criterion_main!(benches);
