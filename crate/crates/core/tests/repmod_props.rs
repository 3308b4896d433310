use gorbit_core::repmod::{decompose_space, subspace_distance, IsotypicDecomposition, SizeClass};
use gorbit_core::{build_chain, HomogeneousSpace, SpaceId, TolerancePolicy};
use proptest::prelude::*;

fn space(id: &str) -> HomogeneousSpace {
    let tol = TolerancePolicy::default();
    build_chain(id.parse::<SpaceId>().unwrap(), &tol)
        .unwrap()
        .space(&tol)
        .unwrap()
}

fn sorted_dims(d: &IsotypicDecomposition) -> Vec<usize> {
    let mut v = d.dims();
    v.sort_unstable();
    v
}

#[test]
fn decompositions_partition_m() {
    let tol = TolerancePolicy::default();
    for id in SpaceId::catalog() {
        let s = build_chain(id, &tol).unwrap().space(&tol).unwrap();
        let d = decompose_space(&s, 0, &tol).unwrap();
        assert_eq!(d.dims().iter().sum::<usize>(), s.dim_m(), "{id}");
        assert!(d.orthogonality_residual() < 1e-8, "{id}");
        let covered: usize = d.components.iter().map(|c| c.basis.ncols()).sum();
        assert_eq!(covered, s.dim_m(), "{id}");
    }
}

#[test]
fn named_examples() {
    let tol = TolerancePolicy::default();
    let d = decompose_space(&space("table1/row1"), 0, &tol).unwrap();
    assert_eq!(sorted_dims(&d), vec![7, 8]);
    let d = decompose_space(&space("table1/row9?n=2"), 0, &tol).unwrap();
    assert_eq!(sorted_dims(&d), vec![1, 5, 8]);
    let triv: Vec<_> = d
        .submodules
        .iter()
        .filter(|s| s.size_class == SizeClass::Trivial)
        .collect();
    assert_eq!(triv.len(), 1);
    assert_eq!(triv[0].dim(), 1);
    let d = decompose_space(&space("table1/row10"), 0, &tol).unwrap();
    assert_eq!(d.dims(), vec![7, 7]);
    assert_eq!(
        d.submodules[0].isomorphism_class,
        d.submodules[1].isomorphism_class
    );
    assert_eq!(d.components.len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn seed_changes_neither_dims_nor_isotypic_spans(a in 0u64..1000, b in 1000u64..2000) {
        let tol = TolerancePolicy::default();
        for id in ["table1/row9?n=2", "table1/row10", "table1/row8?n=1"] {
            let s = space(id);
            let da = decompose_space(&s, a, &tol).unwrap();
            let db = decompose_space(&s, b, &tol).unwrap();
            prop_assert_eq!(sorted_dims(&da), sorted_dims(&db));
            prop_assert_eq!(da.components.len(), db.components.len());
            for ca in &da.components {
                let best = db
                    .components
                    .iter()
                    .map(|cb| subspace_distance(&ca.basis, &cb.basis))
                    .fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-8, "{}: isotypic span moved by {}", id, best);
            }
        }
    }
}
