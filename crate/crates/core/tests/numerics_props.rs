use gorbit_core::numerics::{
    kernel_basis, singular_values, solve_least_squares, symmetric_eigendecomposition, SparseSystem,
};
use gorbit_core::{Matrix, TolerancePolicy, Vector};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3.0f64..3.0, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v))
}

// Low-rank products so kernels are nontrivial.
fn low_rank(n: usize) -> impl Strategy<Value = Matrix> {
    (1usize..n, matrix(n, n), matrix(n, n))
        .prop_map(move |(r, a, b)| a.columns(0, r).into_owned() * b.rows(0, r).into_owned())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn least_squares_residual_is_orthogonal_to_range(m in matrix(7, 4), b in prop::collection::vec(-2.0f64..2.0, 7)) {
        let tol = TolerancePolicy::default();
        let b = Vector::from_vec(b);
        let ls = solve_least_squares(&m, &b, &tol).unwrap();
        let r = &m * &ls.x - &b;
        let scale = m.norm() * b.norm().max(1.0);
        prop_assert!((m.transpose() * &r).amax() <= 1e-10 * scale);
        if b.norm() > 0.0 {
            prop_assert!((ls.relative_residual - r.norm() / b.norm()).abs() <= 1e-10);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in low_rank(6)) {
        let tol = TolerancePolicy::default();
        let k = kernel_basis(&m, &tol);
        let smax = singular_values(&m).first().copied().unwrap_or(0.0);
        for v in k.column_iter() {
            prop_assert!((v.norm() - 1.0).abs() < 1e-10);
            prop_assert!((&m * v).norm() <= tol.feas_tol * smax.max(1.0));
        }
        let gram = k.transpose() * &k;
        prop_assert!((gram - Matrix::identity(k.ncols(), k.ncols())).amax() < 1e-10);
        // rank-nullity against an independent count of small singular values
        let small = singular_values(&m).iter().filter(|s| **s <= tol.rel_rank_tol * smax).count();
        prop_assert_eq!(k.ncols(), small);
    }

    #[test]
    fn eigen_residual_and_orthonormality(a in matrix(6, 6)) {
        let s = &a + a.transpose();
        let e = symmetric_eigendecomposition(&s, &TolerancePolicy::default()).unwrap();
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let scale = s.norm().max(1.0);
        for (i, v) in e.vectors.column_iter().enumerate() {
            prop_assert!((&s * v - v * e.values[i]).norm() <= 1e-10 * scale);
        }
        let gram = e.vectors.transpose() * &e.vectors;
        prop_assert!((gram - Matrix::identity(6, 6)).amax() < 1e-10);
    }

    #[test]
    fn sparse_min_norm_matches_dense(m in matrix(5, 3), b in prop::collection::vec(-2.0f64..2.0, 5)) {
        let tol = TolerancePolicy::default();
        let mut sys = SparseSystem::new(3);
        for i in 0..5 {
            let row: Vec<(usize, f64)> = (0..3).map(|j| (j, m[(i, j)])).collect();
            sys.push_row(&row, b[i]);
        }
        let dense = solve_least_squares(&m, &Vector::from_vec(b.clone()), &tol).unwrap();
        let x = sys.solve_min_norm(&tol);
        let r_dense = (&m * &dense.x - Vector::from_vec(b)).norm();
        prop_assert!((sys.residual_norm(&x) - r_dense).abs() <= 1e-8 * (1.0 + r_dense));
    }
}

#[test]
fn projection_example_against_normal_equations() {
    let tol = TolerancePolicy::default();
    let m = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]);
    let b = Vector::from_vec(vec![3.0, 4.0]);
    let ls = solve_least_squares(&m, &b, &tol).unwrap();
    // normal equations restricted to the range of M: x1 = b1
    assert!((ls.x[0] - 3.0).abs() < 1e-14 && ls.x[1].abs() < 1e-14);
    assert!((ls.relative_residual - 0.8).abs() < 1e-14);
}
