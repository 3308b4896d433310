use gorbit_core::catalog::{arity, condition, expected_go, ReducedCoefficients, RowSetup};
use gorbit_core::gocheck::{check_go, GoVerdict};
use gorbit_core::{Table1Row, TolerancePolicy};
use proptest::prelude::*;

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

#[test]
fn condition_examples() {
    let t = tol();
    assert!(condition(Table1Row::Row8 { n: 1 }, &[1.0, 2.0], &t).unwrap());
    assert!(!condition(Table1Row::Row8 { n: 1 }, &[2.0, 2.0], &t).unwrap());
    assert!(!condition(Table1Row::Row9 { n: 2 }, &[1.0, 1.0, 1.0], &t).unwrap());
    assert!(condition(Table1Row::Row9 { n: 2 }, &[1.0, 1.0, 3.0], &t).unwrap());
    assert!(condition(Table1Row::Row6 { n: 3 }, &[1.0, 2.0, 1.5], &t).unwrap());
    assert!(!condition(Table1Row::Row6 { n: 3 }, &[1.0, 1.0, 2.0], &t).unwrap());
    assert!(expected_go(Table1Row::Row6 { n: 3 }, &[2.0, 2.0, 2.0], &t).unwrap());
    assert!(condition(Table1Row::Row8 { n: 1 }, &[1.0], &t).is_err());
    assert!(condition(Table1Row::Row8 { n: 1 }, &[1.0, -1.0], &t).is_err());
}

#[test]
fn rotated_row10_blueprint_is_go() {
    let t = tol();
    let setup = RowSetup::new(Table1Row::Row10, &t).unwrap();
    let bp = setup.rotated_blueprint(0.7, &t).unwrap();
    assert!(bp.invariance_residual(&setup.space) < 1e-8);
    let a = bp.metric(&[1.0, 3.0], &t).unwrap();
    let r = check_go(&setup.space, &a, 100, 4, &t).unwrap();
    assert_eq!(r.verdict, GoVerdict::GoConsistent);
}

fn rows() -> impl Strategy<Value = Table1Row> {
    prop::sample::select(Table1Row::all())
}

proptest! {
    #[test]
    fn condition_is_scale_invariant(row in rows(), a in prop::collection::vec(0.1f64..10.0, 3), c in 0.01f64..100.0, tie in 0usize..4) {
        let t = tol();
        let mut a = a[..arity(row)].to_vec();
        // ties are where the condition changes
        if tie < a.len() - 1 {
            a[tie + 1] = a[tie];
        }
        let scaled: Vec<f64> = a.iter().map(|v| v * c).collect();
        prop_assert_eq!(condition(row, &a, &t).unwrap(), condition(row, &scaled, &t).unwrap());
    }

    #[test]
    fn reduced_coefficients_satisfy_their_identity(a in prop::collection::vec(0.01f64..100.0, 3)) {
        let r = ReducedCoefficients::new(a[0], a[1], a[2]);
        prop_assert!(r.identity_residual().abs() < 1e-9 * (1.0 + a[2] / a[0]));
    }

    #[test]
    fn odd_row6_identity_in_reduced_form(n in prop::sample::select(vec![3usize, 5]), a1 in 0.2f64..5.0, a2 in 0.2f64..5.0) {
        // choose α₃ on the identity, then perturb it off
        let a3 = n as f64 / ((n as f64 - 1.0) / a2 + 1.0 / a1);
        let on = ReducedCoefficients::new(a1, a2, a3);
        prop_assert!(on.row6_odd(n).abs() < 1e-9);
        let off = ReducedCoefficients::new(a1, a2, a3 * 1.2);
        prop_assert!(off.row6_odd(n).abs() > 1e-6);
    }
}
