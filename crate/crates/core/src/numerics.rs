//! Dense real linear algebra with a single tolerance policy.
//!
//! Every rank decision in the crate (kernels, ranges, feasibility verdicts)
//! goes through a [`TolerancePolicy`], so the thresholds that separate
//! "solvable" from "not solvable" live in exactly one place.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;
pub type Rng = ChaCha8Rng;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("dimension mismatch: {what} (expected {expected}, got {got})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("matrix is not symmetric (asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("invalid tolerance policy: {0}")]
    InvalidPolicy(String),
}

/// Thresholds used by every rank and feasibility decision.
///
/// * singular values below `rel_rank_tol * sigma_max` count as zero;
/// * a linear system is solvable when its relative residual is at most `feas_tol`;
/// * a system is confidently unsolvable when its residual is at least
///   `feas_tol * margin_factor`. Anything in between is inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub rel_rank_tol: f64,
    pub feas_tol: f64,
    pub margin_factor: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rel_rank_tol: 1e-10,
            feas_tol: 1e-8,
            margin_factor: 1e4,
        }
    }
}

impl TolerancePolicy {
    pub fn new(
        rel_rank_tol: f64,
        feas_tol: f64,
        margin_factor: f64,
    ) -> Result<Self, NumericsError> {
        let policy = Self {
            rel_rank_tol,
            feas_tol,
            margin_factor,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        let ok = self.rel_rank_tol > 0.0
            && self.rel_rank_tol < self.feas_tol
            && self.feas_tol < 1.0
            && self.margin_factor >= 10.0;
        if ok {
            Ok(())
        } else {
            Err(NumericsError::InvalidPolicy(format!(
                "need 0 < rel_rank_tol < feas_tol < 1 and margin_factor >= 10, got {self:?}"
            )))
        }
    }

    /// Residual at or above which a system is declared unsolvable.
    pub fn reject_threshold(&self) -> f64 {
        self.feas_tol * self.margin_factor
    }

    /// Relative equality used for comparing user supplied reals.
    pub fn approx_eq(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.feas_tol * a.abs().max(b.abs())
    }
}

/// Minimum-norm least-squares solution together with its relative residual
/// `|Mx - b| / max(|b|, 1)`.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub x: Vector,
    pub relative_residual: f64,
    pub rank: usize,
}

fn check_finite(m: &Matrix, what: &'static str) -> Result<(), NumericsError> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(NumericsError::NonFinite(what))
    }
}

/// Thin SVD with singular values sorted in decreasing order.
struct SortedSvd {
    u: Matrix,
    s: Vec<f64>,
    v_t: Matrix,
}

fn to_faer(m: &Matrix) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

fn from_faer(m: faer::MatRef<'_, f64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(r, c)])
}

/// Full SVD. nalgebra's SVD loses accuracy on rank-deficient inputs, so the
/// factorisation is delegated to faer.
fn sorted_svd(m: &Matrix) -> SortedSvd {
    let svd = to_faer(m).svd().expect("SVD converges");
    let k = m.nrows().min(m.ncols());
    let s_diag = svd.S().column_vector();
    let s = (0..k).map(|i| s_diag[i]).collect();
    let u = from_faer(svd.U());
    let v_t = from_faer(svd.V()).transpose();
    SortedSvd { u, s, v_t }
}

fn numerical_rank(s: &[f64], tol: &TolerancePolicy) -> usize {
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&v| v > tol.rel_rank_tol * smax).count()
}

pub fn solve_least_squares(
    m: &Matrix,
    b: &Vector,
    tol: &TolerancePolicy,
) -> Result<LeastSquares, NumericsError> {
    if m.nrows() != b.len() {
        return Err(NumericsError::DimensionMismatch {
            what: "rhs length vs matrix rows",
            expected: m.nrows(),
            got: b.len(),
        });
    }
    check_finite(m, "least-squares matrix")?;
    let mut x = Vector::zeros(m.ncols());
    let mut rank = 0;
    if m.nrows() > 0 && m.ncols() > 0 {
        let svd = sorted_svd(m);
        rank = numerical_rank(&svd.s, tol);
        for i in 0..rank {
            let coeff = svd.u.column(i).dot(b) / svd.s[i];
            x += svd.v_t.row(i).transpose() * coeff;
        }
    }
    let residual = (m * &x - b).norm();
    Ok(LeastSquares {
        relative_residual: residual / b.norm().max(1.0),
        x,
        rank,
    })
}

/// Orthonormal basis (as columns) of the numerical null space of `m`.
pub fn kernel_basis(m: &Matrix, tol: &TolerancePolicy) -> Matrix {
    kernel_basis_scaled(m, 0.0, tol)
}

/// Null space with singular values cut at `rel_rank_tol * max(sigma_max, scale)`.
/// Use when `m` may be zero up to rounding and its natural size is known.
pub fn kernel_basis_scaled(m: &Matrix, scale: f64, tol: &TolerancePolicy) -> Matrix {
    let n = m.ncols();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return Matrix::identity(n, n);
    }
    // Pad to at least n rows so the SVD yields a full V.
    let padded = if m.nrows() < n {
        let mut p = Matrix::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = sorted_svd(&padded);
    let smax = svd.s.first().copied().unwrap_or(0.0).max(scale);
    let rank = if smax == 0.0 {
        0
    } else {
        svd.s
            .iter()
            .filter(|&&v| v > tol.rel_rank_tol * smax)
            .count()
    };
    let null = n - rank;
    Matrix::from_fn(n, null, |r, c| svd.v_t[(rank + c, r)])
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn range_basis(m: &Matrix, tol: &TolerancePolicy) -> Matrix {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Matrix::zeros(m.nrows(), 0);
    }
    let svd = sorted_svd(m);
    let rank = numerical_rank(&svd.s, tol);
    svd.u.columns(0, rank).into_owned()
}

pub fn rank(m: &Matrix, tol: &TolerancePolicy) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    numerical_rank(&sorted_svd(m).s, tol)
}

/// Orthonormal basis of the orthogonal complement of the column span of
/// `basis` inside R^n.
pub fn complement_basis(basis: &Matrix, tol: &TolerancePolicy) -> Matrix {
    kernel_basis(&basis.transpose(), tol)
}

/// Largest singular value.
pub fn spectral_norm(m: &Matrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Singular values in decreasing order.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s = to_faer(m).singular_values().expect("SVD converges");
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Moore-Penrose pseudo-inverse with the policy's rank cut.
pub fn pseudo_inverse(m: &Matrix, tol: &TolerancePolicy) -> Matrix {
    let mut out = Matrix::zeros(m.ncols(), m.nrows());
    if m.is_empty() {
        return out;
    }
    let svd = sorted_svd(m);
    for i in 0..numerical_rank(&svd.s, tol) {
        out += svd.v_t.row(i).transpose() * svd.u.column(i).transpose() / svd.s[i];
    }
    out
}

#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `values`.
    pub vectors: Matrix,
}

pub fn symmetric_eigendecomposition(
    s: &Matrix,
    tol: &TolerancePolicy,
) -> Result<SymmetricEigen, NumericsError> {
    if s.nrows() != s.ncols() {
        return Err(NumericsError::DimensionMismatch {
            what: "symmetric matrix columns",
            expected: s.nrows(),
            got: s.ncols(),
        });
    }
    check_finite(s, "symmetric matrix")?;
    let asymmetry = (s - s.transpose()).norm();
    if asymmetry > tol.feas_tol * s.norm().max(1.0) {
        return Err(NumericsError::NotSymmetric { asymmetry });
    }
    Ok(sym_eigen_unchecked(&((s + s.transpose()) * 0.5)))
}

pub(crate) fn sym_eigen_unchecked(s: &Matrix) -> SymmetricEigen {
    let n = s.nrows();
    if n == 0 {
        return SymmetricEigen {
            values: vec![],
            vectors: Matrix::zeros(0, 0),
        };
    }
    let eig = to_faer(s)
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("symmetric eigensolver converges");
    let vals = eig.S().column_vector();
    let vecs = eig.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let values = order.iter().map(|&i| vals[i]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| vecs[(r, order[c])]);
    SymmetricEigen { values, vectors }
}

/// Groups ascending values into runs whose consecutive gaps are at most
/// `gap`. Returns index ranges into `values`.
pub fn cluster_sorted(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > gap {
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    out
}

/// Accumulates a tall, sparse linear system `M x = b` row by row through its
/// normal equations. Used for the large structured systems (commutants,
/// intertwiners, linear geodesic graphs) where a dense SVD of `M` would be
/// wasteful; residuals are always evaluated against the stored rows, never
/// against the normal equations.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    n: usize,
    gram: Matrix,
    atb: Vector,
    entries: Vec<(usize, f64)>,
    row_starts: Vec<usize>,
    rhs: Vec<f64>,
}

impl SparseSystem {
    pub fn new(unknowns: usize) -> Self {
        Self {
            n: unknowns,
            gram: Matrix::zeros(unknowns, unknowns),
            atb: Vector::zeros(unknowns),
            entries: Vec::new(),
            row_starts: vec![0],
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    /// Adds one equation. Repeated indices in `row` are summed.
    pub fn push_row(&mut self, row: &[(usize, f64)], rhs: f64) {
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
        for &(j, v) in row {
            debug_assert!(j < self.n);
            if let Some(slot) = merged.iter_mut().find(|(k, _)| *k == j) {
                slot.1 += v;
            } else {
                merged.push((j, v));
            }
        }
        merged.retain(|&(_, v)| v != 0.0);
        if merged.is_empty() && rhs == 0.0 {
            return;
        }
        for &(a, va) in &merged {
            self.atb[a] += va * rhs;
            for &(b, vb) in &merged {
                self.gram[(a, b)] += va * vb;
            }
        }
        self.entries.extend_from_slice(&merged);
        self.row_starts.push(self.entries.len());
        self.rhs.push(rhs);
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        Vector::from_iterator(
            self.rhs.len(),
            (0..self.rhs.len()).map(|r| {
                self.entries[self.row_starts[r]..self.row_starts[r + 1]]
                    .iter()
                    .map(|&(j, v)| v * x[j])
                    .sum::<f64>()
            }),
        )
    }

    pub fn rhs_norm(&self) -> f64 {
        self.rhs.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn residual_norm(&self, x: &Vector) -> f64 {
        let mx = self.apply(x);
        mx.iter()
            .zip(&self.rhs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Orthonormal basis of the null space. The Gram eigenvalues are squared
    /// singular values, so the cut is `rel_rank_tol * lambda_max` on the Gram
    /// spectrum (a relative singular value cut of `sqrt(rel_rank_tol)`).
    pub fn kernel(&self, tol: &TolerancePolicy) -> Matrix {
        if self.n == 0 {
            return Matrix::zeros(0, 0);
        }
        let eig = sym_eigen_unchecked(&self.gram);
        let lmax = eig.values.last().copied().unwrap_or(0.0).max(0.0);
        let cut = tol.rel_rank_tol * lmax;
        let null: Vec<usize> = (0..self.n).filter(|&i| eig.values[i] <= cut).collect();
        Matrix::from_fn(self.n, null.len(), |r, c| eig.vectors[(r, null[c])])
    }

    /// Minimum-norm least-squares solution by regularised Cholesky with
    /// iterative refinement. Null-space components are never excited because
    /// every update lies in the row space.
    pub fn solve_min_norm(&self, tol: &TolerancePolicy) -> Vector {
        let n = self.n;
        let mut x = Vector::zeros(n);
        if n == 0 || self.rows() == 0 {
            return x;
        }
        let trace: f64 = (0..n).map(|i| self.gram[(i, i)]).sum();
        if trace == 0.0 {
            return x;
        }
        let mu = tol.rel_rank_tol * trace;
        let mut reg = self.gram.clone();
        for i in 0..n {
            reg[(i, i)] += mu;
        }
        let chol = Cholesky::new(reg).expect("regularised Gram matrix is positive definite");
        let mut rhs = self.atb.clone();
        for _ in 0..6 {
            let dx = chol.solve(&rhs);
            x += dx;
            rhs = &self.atb - &self.gram * &x;
            if rhs.norm() <= 1e-15 * self.atb.norm().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        x
    }
}

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector(rng: &mut Rng, n: usize) -> Vector {
    Vector::from_iterator(n, (0..n).map(|_| StandardNormal.sample(rng)))
}

pub fn gaussian(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Matrix as nested row arrays, for JSON.
pub fn to_rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect())
        .collect()
}

pub fn from_rows(rows: &[Vec<f64>]) -> Result<Matrix, NumericsError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    for r in rows {
        if r.len() != ncols {
            return Err(NumericsError::DimensionMismatch {
                what: "row length",
                expected: ncols,
                got: r.len(),
            });
        }
    }
    Ok(Matrix::from_fn(nrows, ncols, |r, c| rows[r][c]))
}
