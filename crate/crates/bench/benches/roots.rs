use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rootwork::{check_ee, gen, synthesize_complexity, verify_theorem, RootTable};
use rootwork_bench::dag_corpus;

fn complexity(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize_complexity");
    for v in [8, 32, 64] {
        let corpus = dag_corpus(16, v, 0.3);
        group.bench_with_input(BenchmarkId::from_parameter(v), &corpus, |b, corpus| {
            b.iter(|| {
                for sys in corpus {
                    black_box(synthesize_complexity(sys).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn theorem(c: &mut Criterion) {
    let corpus = dag_corpus(64, 12, 0.3);
    c.bench_function("verify_theorem/12x64", |b| {
        b.iter(|| {
            for sys in &corpus {
                black_box(verify_theorem(sys));
            }
        })
    });
}

fn factor(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor_system");
    for n in [360u64, 5040, 7560] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| black_box(gen::factor_system(n)))
        });
        let f = gen::factor_system(n);
        group.bench_with_input(BenchmarkId::new("check_ee", n), &f.system, |b, sys| {
            b.iter(|| black_box(check_ee(sys).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("root_table", n), &f.system, |b, sys| {
            b.iter(|| black_box(RootTable::compute(sys).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, complexity, theorem, factor);
criterion_main!(benches);
