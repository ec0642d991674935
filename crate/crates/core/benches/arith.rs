//! One worker thread against the default pool on the parallel hot paths.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kzb_core::curve::{Chart, CurveParams};
use kzb_core::formal::{int, Rational};
use kzb_core::freealg::NCSeries;
use kzb_core::kzb::{adjoint_forms, adjoint_free, adjoint_recursion, build_kzb};
use kzb_core::period::verify_theorems;
use rayon::ThreadPoolBuilder;

fn pools() -> [(&'static str, rayon::ThreadPool); 2] {
    [
        ("1-thread", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("default", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn nc_mul(c: &mut Criterion) {
    let d = 10;
    let x = NCSeries::<Rational>::letter_a(d)
        .add(&NCSeries::letter_b(d))
        .exp()
        .unwrap();
    let y = NCSeries::letter_b(d).exp().unwrap();
    let mut g = c.benchmark_group("nc_mul_degree10");
    for (name, pool) in pools() {
        g.bench_function(name, |b| pool.install(|| b.iter(|| black_box(x.mul(&y)))));
    }
    g.finish();
}

fn adjoint(c: &mut Criterion) {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    let chart = Chart::point(&p, int(4), int(4)).unwrap();
    let data = build_kzb(&p, 6).unwrap();
    let forms = adjoint_forms(&data, &chart, 14).unwrap();
    let mut g = c.benchmark_group("adjoint_depth6_z14");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(format!("recursion/{name}"), |b| {
            pool.install(|| b.iter(|| black_box(adjoint_recursion(&forms, 4, 14))))
        });
        g.bench_function(format!("free/{name}"), |b| {
            pool.install(|| b.iter(|| black_box(adjoint_free(&data, &chart, 14).unwrap())))
        });
    }
    g.finish();
}

fn theorem(c: &mut Criterion) {
    let p = CurveParams::new(int(1), int(0)).unwrap();
    let chart = Chart::point(&p, int(4), int(4)).unwrap();
    let data = build_kzb(&p, 5).unwrap();
    let mut g = c.benchmark_group("theorem_depth5_z12");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(name, |b| {
            pool.install(|| b.iter(|| black_box(verify_theorems(&data, &chart, 12).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, nc_mul, adjoint, theorem);
criterion_main!(benches);
