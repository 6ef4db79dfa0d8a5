//! Sequential against parallel execution of each solver on fixed instances.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use placer_core::generate::{random_instance, RandomFamily};
use placer_core::oracle::{oracle_dp, OracleBudget};
use placer_core::page_placement::solve_pp;
use placer_core::{dp_uniform, Instance, Parallelism, SolverOptions};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel)];

fn instance(family: RandomFamily) -> Instance {
    random_instance(&family, 11).expect("valid family")
}

fn options(parallelism: Parallelism) -> SolverOptions {
    SolverOptions {
        parallelism,
        ..SolverOptions::default()
    }
}

fn dp(c: &mut Criterion) {
    let inst = instance(RandomFamily {
        clients: 4,
        objects: 30,
        capacity: (6, 10),
        ..RandomFamily::default()
    });
    let mut group = c.benchmark_group("dp_uniform");
    group.sample_size(20);
    for (name, par) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| dp_uniform::solve(black_box(&inst), None, &options(par)).unwrap())
        });
    }
    group.finish();
}

fn pp(c: &mut Criterion) {
    let inst = instance(RandomFamily {
        clients: 3,
        objects: 10,
        capacity: (3, 5),
        client_limits: Some((1, 2)),
        ..RandomFamily::default()
    });
    let mut group = c.benchmark_group("page_placement");
    group.sample_size(20);
    for (name, par) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| solve_pp(black_box(&inst), &options(par)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let inst = instance(RandomFamily {
        objects: 7,
        ..RandomFamily::default()
    });
    let budget = OracleBudget::default();
    let mut group = c.benchmark_group("oracle_dp");
    group.sample_size(10);
    for (name, par) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &par, |b, &par| {
            b.iter(|| oracle_dp(black_box(&inst), None, &budget, par).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, dp, pp, oracle);
criterion_main!(benches);
