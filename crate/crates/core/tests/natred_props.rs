use gorbit_core::catalog::RowSetup;
use gorbit_core::natred::{
    analytic_admissible, check_kostant, check_natred_identity, decompose_ideals, natred_case_a,
    natred_case_b, pullback, to_metric_spec, NatRedError,
};
use gorbit_core::{build_chain, HomogeneousSpace, SpaceId, Table1Row, TolerancePolicy};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use proptest::prelude::*;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn lo(k: usize) -> HomogeneousSpace {
    let t = tol();
    build_chain(SpaceId::LedgerObata { k }, &t)
        .unwrap()
        .space(&t)
        .unwrap()
}

// diag γ − γγᵀ/Σγ compressed to the sum-zero hyperplane.
fn oracle(gammas: &[f64]) -> Vec<f64> {
    let k = gammas.len();
    let s: f64 = gammas.iter().sum();
    let g = DVector::from_column_slice(gammas);
    let m = DMatrix::from_diagonal(&g) - &g * g.transpose() / s;
    let mut u = DMatrix::<f64>::zeros(k, k - 1);
    for j in 0..k - 1 {
        let norm = ((j + 1) as f64 * (j + 2) as f64).sqrt();
        for i in 0..=j {
            u[(i, j)] = 1.0 / norm;
        }
        u[(j + 1, j)] = -((j + 1) as f64) / norm;
    }
    let mut v = SymmetricEigen::new(u.transpose() * m * u)
        .eigenvalues
        .as_slice()
        .to_vec();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn two_copies_with_a_negative_coefficient() {
    let t = tol();
    let space = lo(2);
    let dec = decompose_ideals(&space, &t).unwrap();
    assert_eq!((dec.n(), dec.n0, dec.n1), (2, 0, 0));
    let nr = natred_case_b(&space, &dec, &[1.0, -2.0], &t).unwrap();
    let a = to_metric_spec(&space, &nr, &t).unwrap();
    assert_eq!(a.alphas().len(), 1);
    assert!((a.alphas()[0] - 4.0).abs() < 1e-10);
    assert!(check_kostant(&space, &nr, &t));
    assert!(check_natred_identity(&space, &nr) < 1e-10);
}

#[test]
fn su2_plus_su3_case_a_needs_a_bijective_ideal() {
    let t = tol();
    let space = build_chain(SpaceId::Su2PlusSu3, &t)
        .unwrap()
        .space(&t)
        .unwrap();
    let dec = decompose_ideals(&space, &t).unwrap();
    assert_eq!(dec.n(), 2);
    let j = dec.bijective()[0];
    let nr = natred_case_a(&dec, j, &[1.5], &t).unwrap();
    assert!(check_natred_identity(&space, &nr) < 1e-10);
    let other = 1 - j;
    assert!(matches!(
        natred_case_a(&dec, other, &[1.5], &t),
        Err(NatRedError::NotBijective { .. })
    ));
}

#[test]
fn go_metric_from_the_table_is_not_naturally_reductive_on_m() {
    let t = tol();
    let setup = RowSetup::new(Table1Row::Row8 { n: 1 }, &t).unwrap();
    let a = setup.blueprint.metric(&[1.0, 2.0], &t).unwrap();
    let nr = pullback(&setup.space, &a);
    assert!(check_natred_identity(&setup.space, &nr) > 1e-3);
    let normal = setup.blueprint.metric(&[2.0, 2.0], &t).unwrap();
    assert!(check_natred_identity(&setup.space, &pullback(&setup.space, &normal)) < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sign_conditions_are_sharp(g in prop::collection::vec(-3.0f64..3.0, 3)) {
        let t = tol();
        let scale = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assume!(g.iter().all(|v| v.abs() > 0.05 * scale));
        prop_assume!(g.iter().sum::<f64>().abs() > 0.05 * scale);
        let ev = oracle(&g);
        prop_assume!(ev.iter().all(|v| v.abs() > 1e-3 * scale));
        let space = lo(3);
        let dec = decompose_ideals(&space, &t).unwrap();
        let analytic = analytic_admissible(&dec, &g);
        prop_assert_eq!(analytic, ev[0] > 0.0);
        match natred_case_b(&space, &dec, &g, &t) {
            Ok(nr) => {
                prop_assert!(analytic);
                let a = to_metric_spec(&space, &nr, &t).unwrap();
                let mut got: Vec<f64> = a
                    .eigenspaces()
                    .iter()
                    .flat_map(|e| std::iter::repeat_n(e.alpha, e.dim() / 3))
                    .collect();
                got.sort_by(f64::total_cmp);
                prop_assert_eq!(got.len(), ev.len());
                for (x, y) in got.iter().zip(&ev) {
                    prop_assert!((x - y).abs() <= 1e-8 * scale);
                }
                prop_assert!(check_natred_identity(&space, &nr) < 1e-9);
            }
            Err(NatRedError::Rejected { .. }) => prop_assert!(!analytic),
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }
}
