use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use tsip::backlund::{cf_expansion, clear_cache, fold_ladder, rs_function};
use tsip::ratfun::{GaussRational, Poly, RationalFunction};
use tsip_bench::deep_instances;

fn ratfun_arithmetic(c: &mut Criterion) {
    let p = |v: &[i64]| Poly::from_i64(v);
    let f = RationalFunction::new(p(&[3, -1, 4, 1, -5, 9]), p(&[2, 6, -5, 3])).unwrap();
    let g = RationalFunction::new(p(&[5, 8, -9, 7]), p(&[-9, 3, 2, 3, 8])).unwrap();
    c.bench_function("ratfun/mul_add", |b| b.iter(|| black_box(&(&f * &g) + &f)));
    c.bench_function("ratfun/derivative", |b| b.iter(|| black_box(f.derivative())));
    let big = p(&[1, 0, -3, 0, 3, 0, -1]);
    let other = &big * &Poly::linear_factor(&GaussRational::from_integer(2));
    c.bench_function("poly/gcd", |b| b.iter(|| black_box(big.gcd(&other))));
}

fn recursion(c: &mut Criterion) {
    let mut group = c.benchmark_group("rs_function_cold");
    for (f, inst) in deep_instances() {
        let n = inst.max_bound_index().clamp(5);
        group.bench_with_input(BenchmarkId::new(f.name(), n), &n, |b, &n| {
            b.iter_batched(clear_cache, |_| rs_function(&inst, n).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();

    let mut group = c.benchmark_group("continued_fraction");
    for (f, inst) in deep_instances() {
        let n = inst.max_bound_index().clamp(5);
        let terms = cf_expansion(&inst, n).unwrap();
        group.bench_with_input(BenchmarkId::new(f.name(), n), &terms, |b, terms| {
            b.iter(|| fold_ladder(inst.w0(), terms).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, ratfun_arithmetic, recursion);
criterion_main!(benches);
