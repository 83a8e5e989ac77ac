use std::collections::BTreeMap;
use std::path::PathBuf;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ptangle_core::colorings::{fox_solution_space, link_determinant};
use ptangle_core::persistence::{find_certificate, verify_certificate, SearchOptions};
use ptangle_core::{Diagram, Tangle};

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

fn solution_spaces(c: &mut Criterion) {
    let mut g = c.benchmark_group("fox_solution_space");
    for crossings in [8, 16, 32] {
        let word: Vec<i32> = (0..crossings)
            .map(|i| if i % 3 == 2 { -2 } else { 1 + (i % 2) })
            .collect();
        let d = Diagram::braid_closure(3, &word).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(crossings), &d, |b, d| {
            b.iter(|| {
                fox_solution_space(black_box(d), 5, &BTreeMap::new())
                    .unwrap()
                    .count()
            })
        });
    }
    g.finish();
    let d = Diagram::parse(&corpus("8_16.pd")).unwrap();
    c.bench_function("determinant 8_16", |b| {
        b.iter(|| link_determinant(black_box(&d)))
    });
}

fn certificates(c: &mut Criterion) {
    let t = Tangle::parse(&corpus("krebes.pd")).unwrap();
    let opts = SearchOptions::default();
    c.bench_function("find_certificate krebes", |b| {
        b.iter(|| find_certificate(black_box(&t), &opts).unwrap())
    });
    let cert = find_certificate(&t, &opts).unwrap().certificate.unwrap();
    c.bench_function("verify krebes 20 hosts", |b| {
        b.iter(|| verify_certificate(&t, &cert, 20, 0).unwrap())
    });
}

criterion_group!(benches, solution_spaces, certificates);
criterion_main!(benches);
