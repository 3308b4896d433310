use gorbit_core::builders::{clifford_residual, spin9_gammas, OctonionTable};
use gorbit_core::{build_chain, SpaceId, Table1Row, TolerancePolicy};

fn closed_form(row: Table1Row) -> (usize, usize) {
    let so = |n: usize| n * (n - 1) / 2;
    let su = |n: usize| n * n - 1;
    let sp = |n: usize| n * (2 * n + 1);
    match row {
        Table1Row::Row1 => (so(9), 21),
        Table1Row::Row2 => (so(10), 21),
        Table1Row::Row3 => (so(11), 21),
        Table1Row::Row5 { n, p } => (su(n + p), su(n)),
        Table1Row::Row6 { n } => (so(2 * n + 1), su(n)),
        Table1Row::Row7 { n } => (so(4 * n + 2), su(2 * n + 1)),
        Table1Row::Row8 { n } => (sp(n + 1), sp(n)),
        Table1Row::Row9 { n } => (su(2 * n + 1), sp(n)),
        Table1Row::Row10 => (so(8), 14),
        Table1Row::Row11 => (so(9), 14),
    }
}

#[test]
fn every_row_matches_the_dimension_formulas() {
    let tol = TolerancePolicy::default();
    for row in Table1Row::all() {
        let chain = build_chain(SpaceId::Table1(row), &tol).unwrap();
        let (dg, dh) = closed_form(row);
        assert_eq!(chain.top().dim(), dg, "{row}");
        assert_eq!(chain.isotropy().dim(), dh, "{row}");
        for lvl in &chain.levels {
            assert!(lvl.homomorphism_residual() < 1e-10, "{row} {}", lvl.name());
        }
        for i in 0..chain.levels.len() - 1 {
            let s = chain.step_inclusion(i);
            let gram = s.transpose() * &s;
            let id = gorbit_core::Matrix::identity(gram.nrows(), gram.nrows());
            assert!((gram - id).amax() < 1e-8, "{row} step {i} not isometric");
        }
    }
}

#[test]
fn clifford_relations() {
    let oct = OctonionTable::new();
    assert!(clifford_residual(&oct.gammas(), -1.0) < 1e-14);
    let g9 = spin9_gammas();
    assert_eq!(g9.len(), 9);
    assert!(clifford_residual(&g9, 1.0) < 1e-14);
}

#[test]
fn space_ids_reject_out_of_range_parameters() {
    for bad in [
        "table1/row6?n=6",
        "table1/row5?n=2&p=2",
        "table1/row4",
        "table1/row8",
        "block/so?n=5&k=5",
    ] {
        assert!(bad.parse::<SpaceId>().is_err(), "{bad}");
    }
    for row in Table1Row::all() {
        let id = SpaceId::Table1(row);
        assert_eq!(id.to_string().parse::<SpaceId>().unwrap(), id);
    }
}
