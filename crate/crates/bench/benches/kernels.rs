use criterion::{criterion_group, criterion_main, Criterion};
use gorbit_bench::space;
use gorbit_core::catalog::RowSetup;
use gorbit_core::gocheck::{check_go, linear_graph_fit};
use gorbit_core::natred::{certify, decompose_ideals, NatRedRequest};
use gorbit_core::numerics::{gaussian_vector, kernel_basis, seeded_rng};
use gorbit_core::repmod::decompose_space;
use gorbit_core::{build_chain, Matrix, SpaceId, Table1Row, TolerancePolicy};
use std::hint::black_box;

fn numerics(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let mut rng = seeded_rng(1);
    let a = Matrix::from_fn(55, 40, |_, _| gaussian_vector(&mut rng, 1)[0]);
    let m = &a * a.transpose();
    c.bench_function("kernel_basis 55x55 rank 40", |b| {
        b.iter(|| kernel_basis(black_box(&m), &tol))
    });
}

fn builders(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let mut g = c.benchmark_group("build_chain");
    g.sample_size(10);
    for id in ["table1/row3", "table1/row10", "table1/row9?n=2"] {
        let sid: SpaceId = id.parse().unwrap();
        g.bench_function(id, |b| {
            b.iter(|| build_chain(black_box(sid), &tol).unwrap())
        });
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let mut g = c.benchmark_group("decompose");
    g.sample_size(10);
    for id in ["table1/row1", "table1/row6?n=5", "table1/row11"] {
        let s = space(id);
        g.bench_function(id, |b| b.iter(|| decompose_space(&s, 0, &tol).unwrap()));
    }
    g.finish();
}

fn go_checks(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let mut g = c.benchmark_group("gocheck");
    g.sample_size(10);
    let setup = RowSetup::new(Table1Row::Row9 { n: 2 }, &tol).unwrap();
    let a = setup.blueprint.metric(&[1.0, 2.0, 3.0], &tol).unwrap();
    g.bench_function("check_go row9 200 samples", |b| {
        b.iter(|| check_go(&setup.space, &a, 200, 0, &tol).unwrap())
    });
    g.bench_function("linear_graph_fit row9", |b| {
        b.iter(|| linear_graph_fit(&setup.space, &a, 0, &tol))
    });
    let setup = RowSetup::new(Table1Row::Row3, &tol).unwrap();
    let a = setup.blueprint.metric(&[1.0, 2.0], &tol).unwrap();
    g.bench_function("check_go row3 200 samples", |b| {
        b.iter(|| check_go(&setup.space, &a, 200, 0, &tol).unwrap())
    });
    g.finish();
}

fn natural_reductivity(c: &mut Criterion) {
    let tol = TolerancePolicy::default();
    let s = space("ledger-obata?k=4");
    let dec = decompose_ideals(&s, &tol).unwrap();
    let gammas = [1.0, 2.0, 3.0, -0.5];
    c.bench_function("certify ledger-obata k=4", |b| {
        b.iter(|| certify(&s, &dec, NatRedRequest::CaseB { gammas: &gammas }, 0, &tol).unwrap())
    });
}

criterion_group!(
    benches,
    numerics,
    builders,
    decomposition,
    go_checks,
    natural_reductivity
);
criterion_main!(benches);
