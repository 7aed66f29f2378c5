use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sbuntwist_bench::chain_corpus;
use sbuntwist_core::untwist;

fn untwist_chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("untwist");
    for length in [2, 6, 12] {
        let corpus = chain_corpus(100, length);
        group.bench_with_input(BenchmarkId::from_parameter(length), &corpus, |b, corpus| {
            b.iter(|| {
                for cycle in corpus {
                    let target = cycle.label().flipped(length);
                    black_box(untwist(cycle, target).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn noether_check(c: &mut Criterion) {
    let corpus = chain_corpus(100, 6);
    c.bench_function("noether_check", |b| {
        b.iter(|| corpus.iter().filter(|c| black_box(c.noether_check()).all_pass()).count())
    });
}

criterion_group!(benches, untwist_chains, noether_check);
criterion_main!(benches);
