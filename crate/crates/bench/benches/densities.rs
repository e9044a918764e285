use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use semidense::densities::{invariant_core, translation_density_fast, translation_density_oracle, ORACLE_BOUND};
use semidense::lp::LimSolver;
use semidense::search::enumerate_semigroups;
use semidense::semigroup::Dedup;
use semidense::SubsetMask;
use semidense_bench::fixtures;
use std::hint::black_box;

/// Every other element, so the set is neither empty nor thick.
fn half(order: usize) -> SubsetMask {
    SubsetMask::from_indices(order, (0..order).step_by(2)).unwrap()
}

fn densities(c: &mut Criterion) {
    let mut g = c.benchmark_group("density");
    for (name, s) in fixtures() {
        let a = half(s.order());
        g.bench_with_input(BenchmarkId::new("folner", name), &s, |b, s| {
            b.iter(|| invariant_core(black_box(s)).folner_density(a).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("translation_fast", name), &s, |b, s| {
            b.iter(|| translation_density_fast(black_box(s), a).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("banach_lp", name), &s, |b, s| {
            b.iter(|| LimSolver::new(black_box(s)).banach_density(a).unwrap())
        });
        if s.order() <= 9 {
            g.bench_with_input(BenchmarkId::new("translation_oracle", name), &s, |b, s| {
                b.iter(|| translation_density_oracle(black_box(s), a, ORACLE_BOUND).unwrap())
            });
        }
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for n in [3, 4] {
        g.bench_with_input(BenchmarkId::new("iso", n), &n, |b, &n| {
            b.iter(|| enumerate_semigroups(n, Dedup::Iso).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, densities, enumeration);
criterion_main!(benches);
