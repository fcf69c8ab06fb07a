use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oddgz::verify::{check_anticommutator_identities, lagrange_suite};
use oddgz::{enumerate, Budget, Generator, HighestWeight, Module};

const WEIGHTS: [&str; 3] = ["2,1;1,0", "2,2;1,1", "2,1,1;1,0,0"];

fn hw(s: &str) -> HighestWeight {
    s.parse().unwrap()
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for s in WEIGHTS {
        g.bench_with_input(BenchmarkId::from_parameter(s), &hw(s), |b, w| {
            b.iter(|| enumerate(black_box(w)).unwrap())
        });
    }
    g.finish();
}

fn generator_matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("generator_matrix");
    for s in WEIGHTS {
        let w = hw(s);
        let m = Module::new(&w).unwrap();
        g.bench_with_input(BenchmarkId::new("odd", s), &m, |b, m| {
            b.iter(|| {
                for gen in Generator::raising(m.n()) {
                    black_box(m.generator_matrix(gen).unwrap());
                    black_box(m.generator_matrix(gen.star()).unwrap());
                }
            })
        });
        g.bench_with_input(BenchmarkId::new("weyl_all", s), &w, |b, w| {
            b.iter(|| {
                let m = Module::new(w).unwrap();
                for &a in &m.indices() {
                    for &bb in &m.indices() {
                        black_box(m.weyl_element(a, bb).unwrap());
                    }
                }
            })
        });
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for s in WEIGHTS {
        g.bench_with_input(BenchmarkId::new("anticommutators", s), &hw(s), |b, w| {
            b.iter(|| check_anticommutator_identities(w, &budget).unwrap())
        });
    }
    g.bench_function("lagrange_n8", |b| {
        b.iter(|| lagrange_suite(8, 100, 7).unwrap())
    });
    g.finish();
}

criterion_group!(benches, enumeration, generator_matrices, suites);
criterion_main!(benches);
