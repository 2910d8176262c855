// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use exactq_bench::verify_cases;
use exactq_core::gadgets::u_gadget;
use exactq_core::verifier::poly::acceptance_polynomial;
use exactq_core::{build_unb, gamma_chain, truth_for, verify_exactness, VerifyOptions};

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, plan) in verify_cases() {
        let truth = truth_for(&plan).expect("known family");
        for parallel in [false, true] {
            let opts = VerifyOptions { parallel, ..Default::default() };
            let id = BenchmarkId::new(if parallel { "parallel" } else { "serial" }, &name);
            group.bench_with_input(id, &plan, |b, plan| {
                b.iter(|| verify_exactness(plan, &truth, &opts).expect("runs"))
            });
        }
    }
    group.finish();
}

fn completion(c: &mut Criterion) {
    let mut group = c.benchmark_group("complete_u");
    for n in [8, 14, 20] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| u_gadget(black_box(n)).complete().expect("unitary"))
        });
    }
    group.finish();
}

fn chains(c: &mut Criterion) {
    c.bench_function("gamma_chain/d3/n1001", |b| {
        b.iter(|| gamma_chain(3, 1, 1.0 / 112.0, black_box(1001)).expect("converges"))
    });
}

fn polynomials(c: &mut Criterion) {
    let plan = build_unb(9, 1).expect("valid instance");
    c.bench_function("acceptance_polynomial/unb/9/1", |b| {
        b.iter(|| acceptance_polynomial(black_box(&plan)).expect("small n"))
    });
}

criterion_group!(benches, verification, completion, chains, polynomials);
criterion_main!(benches);
