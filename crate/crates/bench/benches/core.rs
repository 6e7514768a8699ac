use std::f64::consts::FRAC_PI_2;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use valkit_core::certify::{extremize, Extremum, SearchDomain};
use valkit_core::cycle::DirectPath;
use valkit_core::kernels::golden_excess_reduced;
use valkit_core::{re_val, val_complex, ModularFunction, PeriodicWord, QuadSurd, ValOptions};

fn words() -> Vec<PeriodicWord> {
    [vec![1, 1], vec![2, 2, 1, 1], vec![3, 1, 4, 1, 5, 9, 2, 6]]
        .into_iter()
        .map(|l| PeriodicWord::new(l).unwrap())
        .collect()
}

fn formula(c: &mut Criterion) {
    let f = ModularFunction::j();
    let opts = ValOptions::default();
    let mut g = c.benchmark_group("re_val");
    for w in words() {
        g.bench_with_input(BenchmarkId::from_parameter(&w), &w, |b, w| {
            b.iter(|| re_val(&f, black_box(w), &opts).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let f = ModularFunction::j();
    let mut g = c.benchmark_group("direct");
    g.sample_size(10);
    for w in words() {
        g.bench_with_input(BenchmarkId::from_parameter(&w), &w, |b, w| {
            b.iter(|| val_complex(&f, black_box(w), DirectPath::default(), 1e-10).unwrap())
        });
    }
    g.finish();
}

fn cf_expand(c: &mut Criterion) {
    let x = QuadSurd::new(17, 3, 11, 1_000_003).unwrap();
    c.bench_function("cf_expand", |b| b.iter(|| black_box(&x).cf_expand().unwrap()));
}

fn search(c: &mut Criterion) {
    let dom = SearchDomain::rect((1.0, 4.0), (std::f64::consts::FRAC_PI_3, FRAC_PI_2), 128, 40).unwrap();
    let kernel = |x: f64, t: f64| golden_excess_reduced(x, t);
    c.bench_function("extremize_128", |b| b.iter(|| extremize(&kernel, &dom, Extremum::Min).unwrap()));
}

criterion_group!(benches, formula, oracle, cf_expand, search);
criterion_main!(benches);
