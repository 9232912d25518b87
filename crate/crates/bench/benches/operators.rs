use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vermacas::asymptotics::Reference;
use vermacas::generators::shared_symbolic_catalog;
use vermacas::{central_coefficient, defect_matrix, expand_defect, hs_partial_norm, DefectKind};
use vermacas_bench::{generic_weight, half, TRUNCATIONS};

fn symbol_composition(c: &mut Criterion) {
    let cat = shared_symbolic_catalog();
    let mut group = c.benchmark_group("commutator over Q(h)");
    for k in [2i64, 3, 4] {
        let (a, b) = (cat.l(k), cat.l(-k));
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |bench, _| {
            bench.iter(|| black_box(&a).commutator(black_box(&b)))
        });
    }
    group.finish();
}

fn defect_matrices(c: &mut Criterion) {
    let h = generic_weight();
    let mut group = c.benchmark_group("defect matrix");
    for n in TRUNCATIONS {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, &n| {
            bench.iter(|| defect_matrix(DefectKind::Witt, 2, -3, black_box(&h), n, 0).unwrap())
        });
    }
    group.finish();
}

fn hs_sums(c: &mut Criterion) {
    let h = generic_weight();
    let n = *TRUNCATIONS.last().unwrap();
    let a = defect_matrix(DefectKind::Witt, 3, -3, &h, n, 0).unwrap();
    c.bench_function("hilbert-schmidt partial sums", |bench| {
        bench.iter(|| hs_partial_norm(black_box(&a), &TRUNCATIONS).unwrap())
    });
}

fn expansions(c: &mut Criterion) {
    let h0 = half();
    c.bench_function("expansion (2,-2) to order 2", |bench| {
        bench.iter(|| expand_defect(2, -2, black_box(&h0), 2, Reference::BaseWeight).unwrap())
    });
    c.bench_function("central coefficient i=3", |bench| bench.iter(|| central_coefficient(3, black_box(&h0)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = symbol_composition, defect_matrices, hs_sums, expansions
}
criterion_main!(benches);
