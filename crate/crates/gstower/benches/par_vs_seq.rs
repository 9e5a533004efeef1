//! Parallel vs sequential comparison for the elimination-heavy paths.
//!
//! The parallel strategy needs the `parallel` feature (on by default);
//! without it both arms run the same sequential code and bench equal.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gstower::fp::Strategy;
use gstower::presentation::Presentation;
use gstower::tower;

fn fixture(p: u32, gens: &[&str], relators: &[&str]) -> Presentation {
    let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
    let words = relators
        .iter()
        .map(|t| gstower::word::parse_word(t, &names).unwrap())
        .collect();
    Presentation::new(p, names, words).unwrap()
}

fn bench_ideal_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal_closure");
    group.sample_size(10);
    let cases = [
        (
            "free_product_f3_n7",
            fixture(3, &["a", "b"], &["a^3", "b^3"]),
            7usize,
        ),
        (
            "elementary_abelian_f5_n8",
            fixture(5, &["a", "b"], &["a^5", "b^5", "[a,b]"]),
            8,
        ),
    ];
    for (name, pres, max_deg) in &cases {
        for (strat_name, strat) in [("seq", Strategy::Sequential), ("par", Strategy::Parallel)] {
            group.bench_function(BenchmarkId::new(*name, strat_name), |b| {
                b.iter(|| pres.ideal_truncation_with(*max_deg, strat).unwrap().rank())
            });
        }
    }
    group.finish();
}

fn bench_hilbert(c: &mut Criterion) {
    let mut group = c.benchmark_group("hilbert_coeffs");
    group.sample_size(10);
    let pres = fixture(3, &["a", "b"], &["a^3", "b^3", "[a,b]"]);
    for (strat_name, strat) in [("seq", Strategy::Sequential), ("par", Strategy::Parallel)] {
        group.bench_function(BenchmarkId::new("z3_square_n6", strat_name), |b| {
            b.iter(|| pres.hilbert_coeffs_with(6, strat).unwrap().total())
        });
    }
    group.finish();
}

fn bench_growth_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("growth_table");
    group.sample_size(20);
    let (spec, dmodel, cmodel) = tower::cyclotomic_setup(3, 13, 1, 0).unwrap();
    for (strat_name, strat) in [("seq", Strategy::Sequential), ("par", Strategy::Parallel)] {
        group.bench_function(BenchmarkId::new("mu39_rows_0_to_10", strat_name), |b| {
            b.iter(|| {
                tower::growth_table_with(&spec, &dmodel, &cmodel, 0, 10, 1, strat)
                    .unwrap()
                    .rows
                    .len()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_ideal_closure,
    bench_hilbert,
    bench_growth_table
);
criterion_main!(benches);
