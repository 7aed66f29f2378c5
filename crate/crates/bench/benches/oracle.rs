use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sbuntwist_bench::configuration_corpus;
use sbuntwist_core::links::LinkKind;
use sbuntwist_core::oracle::closed_point::{sample_closed_point, verify_general_position};
use sbuntwist_core::oracle::configuration::classify_configuration;
use sbuntwist_core::oracle::scan::{formula_scan, geometric_scan};

fn classify(c: &mut Criterion) {
    let (f, corpus) = configuration_corpus(11, 1000);
    c.bench_function("classify_configuration/F11", |b| {
        b.iter(|| {
            for pts in &corpus {
                black_box(classify_configuration(&f, pts).unwrap());
            }
        })
    });
}

fn general_position(c: &mut Criterion) {
    let mut group = c.benchmark_group("general_position");
    for p in [5u64, 13] {
        let points: Vec<_> = (0..50).map(|s| sample_closed_point(p, 6, s).unwrap()).collect();
        group.bench_with_input(BenchmarkId::new("verify", p), &points, |b, points| {
            b.iter(|| points.iter().filter(|cp| verify_general_position(cp).unwrap().passes()).count())
        });
        group.bench_with_input(BenchmarkId::new("sample", p), &p, |b, &p| {
            b.iter(|| black_box(sample_closed_point(p, 6, 7).unwrap()))
        });
    }
    group.finish();
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for kind in [LinkKind::Phi3, LinkKind::Phi6] {
        group.bench_function(BenchmarkId::new("formula", kind.as_str()), |b| {
            b.iter(|| black_box(formula_scan(kind, 50)))
        });
        group.bench_function(BenchmarkId::new("geometry", kind.as_str()), |b| {
            b.iter(|| black_box(geometric_scan(kind, 7, 10, 1).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, classify, general_position, scans);
criterion_main!(benches);
