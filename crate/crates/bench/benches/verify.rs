use std::hint::black_box;

use adw_core::catalog::{parse_params, Catalog};
use adw_core::identities::check_anti_dendriform;
use adw_core::iso::{fingerprint, search_witness, Strategy, DEFAULT_BUDGET};
use adw_core::verify::run_suite;
use criterion::{criterion_group, criterion_main, Criterion};

fn identities(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let d = cat
        .instantiate_ad("AD4.13", &parse_params("alpha=3,beta=5/7,gamma=-2,lambda=7/3").unwrap())
        .unwrap();
    c.bench_function("check_anti_dendriform AD4.13", |b| b.iter(|| check_anti_dendriform(black_box(&d))));
    c.bench_function("fingerprint AD4.13", |b| b.iter(|| fingerprint(black_box(&d))));
}

fn search(c: &mut Criterion) {
    let cat = Catalog::builtin();
    let a = cat.instantiate_ad("AD3.8", &parse_params("alpha=1,beta=0").unwrap()).unwrap();
    let b = cat.instantiate_ad("AD3.8", &parse_params("alpha=0,beta=-1").unwrap()).unwrap();
    c.bench_function("structured search AD3.8 swap", |bench| {
        bench.iter(|| search_witness(cat, &a, &b, &Strategy::StructuredGrid, DEFAULT_BUDGET).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for s in ["as4", "ad4-thm1", "coincidences"] {
        g.bench_function(s, |b| b.iter(|| run_suite(black_box(s), 0, 5).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, identities, search, suites);
criterion_main!(benches);
