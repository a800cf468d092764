use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tsip::backlund::rs_function;
use tsip::verify::{numerov_spectrum, Grid, GridOverrides};
use tsip::wavefun::assemble;
use tsip_bench::deep_instances;

fn numerov(c: &mut Criterion) {
    let mut group = c.benchmark_group("numerov_spectrum");
    group.sample_size(10);
    for (f, inst) in deep_instances() {
        let count = inst.max_bound_index().clamp(5) + 1;
        let grid = Grid::for_instance(&inst, count, GridOverrides::default()).unwrap();
        group.bench_with_input(BenchmarkId::new(f.name(), count), &grid, |b, grid| {
            b.iter(|| numerov_spectrum(&inst, count, grid).unwrap())
        });
    }
    group.finish();
}

fn wavefunctions(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize_and_overlap");
    group.sample_size(20);
    for (f, inst) in deep_instances() {
        let states: Vec<_> = (0..=inst.max_bound_index().clamp(3))
            .map(|n| assemble(&rs_function(&inst, n).unwrap(), &inst).unwrap())
            .collect();
        group.bench_function(f.name(), |b| {
            b.iter(|| {
                let a = states[0].normalize().unwrap();
                let z = states[states.len() - 1].normalize().unwrap();
                a.overlap(&z).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, numerov, wavefunctions);
criterion_main!(benches);
