use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tutte_bench::bench_graphs;
use tutte_core::{
    build_complex, homology, smith_normal_form, tutte_deletion_contraction, tutte_hat, CoefficientSystem,
};

fn complex(c: &mut Criterion) {
    let sys = CoefficientSystem::default_system();
    let mut group = c.benchmark_group("build_complex");
    for (name, g) in bench_graphs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| build_complex(black_box(g), &sys).unwrap())
        });
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let sys = CoefficientSystem::default_system();
    let mut group = c.benchmark_group("homology");
    group.sample_size(10);
    for (name, g) in bench_graphs() {
        let cx = build_complex(&g, &sys).unwrap();
        group.bench_function(name, |b| b.iter(|| homology(black_box(&cx)).unwrap()));
    }
    group.finish();
}

fn snf(c: &mut Criterion) {
    let sys = CoefficientSystem::default_system();
    let (_, k4) = bench_graphs().remove(0);
    let cx = build_complex(&k4, &sys).unwrap();
    let (i, deg) = (0..cx.top_degree())
        .flat_map(|i| cx.bidegrees(i).into_iter().map(move |d| (i, d)))
        .max_by_key(|&(i, d)| cx.differential_or_zero(i, d).nnz())
        .unwrap();
    let m = cx.differential_or_zero(i, deg);
    c.bench_function("smith_normal_form/K4 largest block", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn tutte(c: &mut Criterion) {
    let mut group = c.benchmark_group("tutte");
    for (name, g) in bench_graphs() {
        group.bench_with_input(BenchmarkId::new("deletion_contraction", name), &g, |b, g| {
            b.iter(|| tutte_deletion_contraction(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("hat", name), &g, |b, g| b.iter(|| tutte_hat(black_box(g))));
    }
    group.finish();
}

criterion_group!(benches, complex, cohomology, snf, tutte);
criterion_main!(benches);
