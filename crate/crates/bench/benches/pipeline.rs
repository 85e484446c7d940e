use criterion::{criterion_group, criterion_main, Criterion};
use crystal_bench::{enveloping, function_algebras, group_algebras};
use crystal_core::filtration::{dee_filtration, jadic_filtration};
use crystal_core::graded::graded_from_filtration;
use crystal_core::hopf::random_law_suite;
use crystal_core::rees::{drinfeld_prime, rees_of_filtration, DEFAULT_WINDOW_CAP};
use std::hint::black_box;

fn filtrations(c: &mut Criterion) {
    let mut g = c.benchmark_group("filtrations");
    for (name, h) in group_algebras() {
        g.bench_function(format!("jadic {name}"), |b| b.iter(|| jadic_filtration(black_box(&h)).unwrap()));
    }
    for (name, h) in function_algebras() {
        g.bench_function(format!("dee {name}"), |b| b.iter(|| dee_filtration(black_box(&h)).unwrap()));
    }
    let u = enveloping();
    g.bench_function("dee u(heisenberg)/GF3", |b| b.iter(|| dee_filtration(black_box(&u)).unwrap()));
    g.finish();
}

fn graded(c: &mut Criterion) {
    let mut g = c.benchmark_group("graded");
    for (name, h) in group_algebras() {
        let j = jadic_filtration(&h).unwrap();
        g.bench_function(format!("hat {name}"), |b| b.iter(|| graded_from_filtration(&h, black_box(&j)).unwrap()));
    }
    g.finish();
}

fn rees(c: &mut Criterion) {
    let mut g = c.benchmark_group("rees");
    g.sample_size(10);
    for (name, h) in group_algebras().into_iter().take(2) {
        let jr = rees_of_filtration(&h, &jadic_filtration(&h).unwrap()).unwrap();
        g.bench_function(format!("prime {name}"), |b| b.iter(|| drinfeld_prime(black_box(&jr), 12, DEFAULT_WINDOW_CAP).unwrap()));
    }
    g.finish();
}

fn laws(c: &mut Criterion) {
    let mut g = c.benchmark_group("laws");
    g.sample_size(10);
    for (name, h) in group_algebras().into_iter().chain(function_algebras()) {
        g.bench_function(format!("random {name}"), |b| b.iter(|| random_law_suite(black_box(&h), 1, 10, 3).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, filtrations, graded, rees, laws);
criterion_main!(benches);
