//! Matrix Lie algebras: structure constants, the Killing form, subalgebras,
//! reductive complements and centralizers.
//!
//! Elements are handled in coordinates relative to a basis of real matrices.
//! Brackets are always evaluated from the structure constants, so nothing
//! downstream depends on the size of the defining representation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{
    self, complement_basis, kernel_basis, range_basis, sym_eigen_unchecked, Matrix, NumericsError,
    TolerancePolicy, Vector,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("basis of {name} is empty")]
    EmptyBasis { name: String },
    #[error("basis matrices of {name} have inconsistent shapes")]
    Shape { name: String },
    #[error("basis of {name} is linearly dependent (rank {rank} < {dim})")]
    Dependent {
        name: String,
        rank: usize,
        dim: usize,
    },
    #[error("{name} is not closed under the bracket: [e{i}, e{j}] has residual {residual:.3e}")]
    Closure {
        name: String,
        i: usize,
        j: usize,
        residual: f64,
    },
    #[error(
        "Killing form of {name} is not positive definite (min eigenvalue {min_eigenvalue:.3e})"
    )]
    NotCompactSemisimple { name: String, min_eigenvalue: f64 },
    #[error("degenerate Gram restriction while forming the complement of {sub} in {parent}")]
    DegenerateComplement { parent: String, sub: String },
    #[error("{name}: [h, m] is not contained in m (residual {residual:.3e})")]
    NotReductive { name: String, residual: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Dense structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<f64>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero entries as `(i, j, k, value)` with `i < j`.
    pub fn sparse_triples(&self, threshold: f64) -> Vec<(usize, usize, usize, f64)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in 0..d {
                    let v = self.get(i, j, k);
                    if v.abs() > threshold {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }
}

/// A real matrix Lie algebra together with its structure constants and the
/// Gram matrix of minus its Killing form.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    ambient_dim: usize,
    basis: Vec<Matrix>,
    structure: StructureConstants,
    /// `ad[i]` is the matrix of `ad(e_i)` in the basis coordinates.
    ad: Vec<Matrix>,
    killing: Matrix,
    /// Maps a flattened matrix onto basis coordinates (least squares).
    coord_map: Matrix,
}

fn flatten(m: &Matrix) -> Vector {
    Vector::from_iterator(m.len(), m.iter().copied())
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a * b - b * a
}

impl LieAlgebra {
    /// Builds the algebra spanned by `basis`, checking independence and
    /// closure and computing structure constants and the Killing Gram matrix.
    pub fn from_basis(
        name: impl Into<String>,
        basis: Vec<Matrix>,
        tol: &TolerancePolicy,
    ) -> Result<Self, LieError> {
        let name = name.into();
        let Some(first) = basis.first() else {
            return Err(LieError::EmptyBasis { name });
        };
        let n = first.nrows();
        if basis.iter().any(|b| b.nrows() != n || b.ncols() != n) {
            return Err(LieError::Shape { name });
        }
        let d = basis.len();
        let flat = Matrix::from_fn(n * n, d, |r, c| basis[c][(r % n, r / n)]);
        let flat_rank = numerics::rank(&flat, tol);
        if flat_rank < d {
            return Err(LieError::Dependent {
                name,
                rank: flat_rank,
                dim: d,
            });
        }
        let coord_map = numerics::pseudo_inverse(&flat, tol);

        let mut data = vec![0.0; d * d * d];
        for i in 0..d {
            for j in (i + 1)..d {
                let br = commutator(&basis[i], &basis[j]);
                let f = flatten(&br);
                let coords = &coord_map * &f;
                let residual = (&flat * &coords - &f).norm();
                if residual > tol.feas_tol * f.norm().max(1.0) {
                    return Err(LieError::Closure {
                        name,
                        i,
                        j,
                        residual,
                    });
                }
                for k in 0..d {
                    data[(i * d + j) * d + k] = coords[k];
                    data[(j * d + i) * d + k] = -coords[k];
                }
            }
        }
        let structure = StructureConstants { dim: d, data };
        let ad = ad_matrices(&structure);
        let killing = killing_from_ad(&ad);
        Ok(Self {
            name,
            ambient_dim: n,
            basis,
            structure,
            ad,
            killing,
            coord_map,
        })
    }

    /// Re-expresses the algebra in a basis that is orthonormal for minus the
    /// Killing form. Requires a positive definite Killing form.
    pub fn normalized(self, tol: &TolerancePolicy) -> Result<Self, LieError> {
        let eig = sym_eigen_unchecked(&self.killing);
        let min = eig.values.first().copied().unwrap_or(0.0);
        let max = eig.values.last().copied().unwrap_or(0.0);
        if min <= tol.feas_tol * max.max(1.0) {
            return Err(LieError::NotCompactSemisimple {
                name: self.name,
                min_eigenvalue: min,
            });
        }
        // Symmetric orthonormalisation K^{-1/2}; keeps already orthogonal
        // bases merely rescaled.
        let d = self.dim();
        let inv_sqrt = Matrix::from_fn(d, d, |r, c| {
            (0..d)
                .map(|k| eig.vectors[(r, k)] * eig.vectors[(c, k)] / eig.values[k].sqrt())
                .sum()
        });
        let basis = (0..d)
            .map(|c| self.element(&inv_sqrt.column(c).into_owned()))
            .collect();
        Self::from_basis(self.name, basis, tol)
    }

    pub fn is_killing_orthonormal(&self, tol: &TolerancePolicy) -> bool {
        (&self.killing - Matrix::identity(self.dim(), self.dim())).norm()
            <= tol.feas_tol * self.dim() as f64
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.structure
    }

    /// Gram matrix of minus the Killing form, `K[i][j] = -tr(ad e_i ad e_j)`.
    pub fn killing_gram(&self) -> &Matrix {
        &self.killing
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    /// Matrix of `ad(x)` in basis coordinates.
    pub fn ad(&self, x: &Vector) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for (i, a) in self.ad.iter().enumerate() {
            if x[i] != 0.0 {
                out += a * x[i];
            }
        }
        out
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.ad(x) * y
    }

    /// The matrix `sum_i x_i e_i`.
    pub fn element(&self, x: &Vector) -> Matrix {
        let n = self.ambient_dim;
        let mut out = Matrix::zeros(n, n);
        for (i, b) in self.basis.iter().enumerate() {
            if x[i] != 0.0 {
                out += b * x[i];
            }
        }
        out
    }

    /// Coordinates of a matrix and the residual of the expansion.
    pub fn coordinates(&self, m: &Matrix) -> (Vector, f64) {
        let f = flatten(m);
        let coords = &self.coord_map * &f;
        let n = self.ambient_dim;
        let recon = self.element(&coords);
        let residual = (recon - m).norm();
        debug_assert_eq!(m.nrows(), n);
        (coords, residual)
    }

    /// Minus-Killing inner product of coordinate vectors.
    pub fn inner(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * &self.killing * y)[(0, 0)]
    }

    /// Largest Jacobi identity violation over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                // [[e_i, e_j], .] - [e_i, [e_j, .]] + [e_j, [e_i, .]] = 0
                let bij = self.bracket(&unit(d, i), &unit(d, j));
                let lhs = self.ad(&bij) - (&self.ad[i] * &self.ad[j] - &self.ad[j] * &self.ad[i]);
                worst = worst.max(lhs.amax());
            }
        }
        worst
    }

    /// Largest violation of `B([z,x],y) + B(x,[z,y]) = 0` over basis triples.
    pub fn killing_invariance_residual(&self) -> f64 {
        // In matrix form: ad_z^T K + K ad_z = 0 for all basis z.
        self.ad
            .iter()
            .map(|a| (a.transpose() * &self.killing + &self.killing * a).amax())
            .fold(0.0, f64::max)
    }

    /// Block-diagonal direct sum of algebras.
    pub fn direct_sum(
        name: impl Into<String>,
        parts: &[&LieAlgebra],
        tol: &TolerancePolicy,
    ) -> Result<Self, LieError> {
        let n: usize = parts.iter().map(|p| p.ambient_dim).sum();
        let mut basis = Vec::new();
        let mut offset = 0;
        for p in parts {
            for b in &p.basis {
                let mut m = Matrix::zeros(n, n);
                m.view_mut((offset, offset), (p.ambient_dim, p.ambient_dim))
                    .copy_from(b);
                basis.push(m);
            }
            offset += p.ambient_dim;
        }
        Self::from_basis(name, basis, tol)
    }

    pub fn to_doc(&self) -> LieAlgebraDoc {
        LieAlgebraDoc {
            name: self.name.clone(),
            ambient_dim: self.ambient_dim,
            basis: self.basis.iter().map(numerics::to_rows).collect(),
            structure_constants: self.structure.sparse_triples(1e-13),
        }
    }

    pub fn from_doc(doc: &LieAlgebraDoc, tol: &TolerancePolicy) -> Result<Self, LieError> {
        let basis = doc
            .basis
            .iter()
            .map(|rows| numerics::from_rows(rows))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_basis(doc.name.clone(), basis, tol)
    }
}

pub(crate) fn unit(d: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(d);
    v[i] = 1.0;
    v
}

fn ad_matrices(sc: &StructureConstants) -> Vec<Matrix> {
    let d = sc.dim;
    (0..d)
        .map(|i| Matrix::from_fn(d, d, |k, j| sc.get(i, j, k)))
        .collect()
}

fn killing_from_ad(ad: &[Matrix]) -> Matrix {
    let d = ad.len();
    let mut k = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            // tr(A B) = sum_{rc} A_rc B_cr
            let t: f64 = ad[i].component_mul(&ad[j].transpose()).sum();
            k[(i, j)] = -t;
            k[(j, i)] = -t;
        }
    }
    k
}

/// JSON form of a [`LieAlgebra`]. Structure constants are informative; they
/// are recomputed from the basis on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraDoc {
    pub name: String,
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Vec<f64>>>,
    pub structure_constants: Vec<(usize, usize, usize, f64)>,
}

/// A subalgebra of a parent algebra, given by an inclusion matrix whose
/// columns are parent coordinates of the sub-basis.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    parent: Arc<LieAlgebra>,
    inclusion: Matrix,
    algebra: LieAlgebra,
}

impl Subalgebra {
    /// The subalgebra spanned by the given parent-coordinate columns. The
    /// columns are orthonormalised (so, for a Killing-orthonormal parent,
    /// the sub-basis is orthonormal for the parent's form).
    pub fn from_span(
        parent: Arc<LieAlgebra>,
        name: impl Into<String>,
        span: &Matrix,
        tol: &TolerancePolicy,
    ) -> Result<Self, LieError> {
        let name = name.into();
        let inclusion = range_basis(span, tol);
        if inclusion.ncols() == 0 {
            return Err(LieError::EmptyBasis { name });
        }
        let basis = (0..inclusion.ncols())
            .map(|c| parent.element(&inclusion.column(c).into_owned()))
            .collect();
        let algebra = LieAlgebra::from_basis(name, basis, tol)?;
        let sub = Self {
            parent,
            inclusion,
            algebra,
        };
        Ok(sub)
    }

    /// The subalgebra spanned by the given matrices (expressed in the parent).
    pub fn from_matrices(
        parent: Arc<LieAlgebra>,
        name: impl Into<String>,
        mats: &[Matrix],
        tol: &TolerancePolicy,
    ) -> Result<Self, LieError> {
        let d = parent.dim();
        let mut span = Matrix::zeros(d, mats.len());
        for (c, m) in mats.iter().enumerate() {
            let (coords, residual) = parent.coordinates(m);
            if residual > tol.feas_tol * m.norm().max(1.0) {
                return Err(LieError::Closure {
                    name: format!("{} (generator {c} outside parent)", parent.name()),
                    i: c,
                    j: c,
                    residual,
                });
            }
            span.set_column(c, &coords);
        }
        Self::from_span(parent, name, &span, tol)
    }

    /// The elements of the parent satisfying a family of linear constraints.
    /// `constraint` maps a parent matrix to the vector of quantities that must
    /// vanish.
    pub fn from_constraints<F>(
        parent: Arc<LieAlgebra>,
        name: impl Into<String>,
        constraint: F,
        tol: &TolerancePolicy,
    ) -> Result<Self, LieError>
    where
        F: Fn(&Matrix) -> Vec<f64>,
    {
        let cols: Vec<Vec<f64>> = parent.basis().iter().map(&constraint).collect();
        let rows = cols.first().map_or(0, Vec::len);
        let c = Matrix::from_fn(rows, parent.dim(), |r, j| cols[j][r]);
        let k = kernel_basis(&c, tol);
        Self::from_span(parent, name, &k, tol)
    }

    pub fn parent(&self) -> &Arc<LieAlgebra> {
        &self.parent
    }

    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.inclusion.ncols()
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    /// Largest violation of `i([x, y]) = [i(x), i(y)]` on basis pairs.
    pub fn homomorphism_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in (a + 1)..d {
                let sub = self.algebra.bracket(&unit(d, a), &unit(d, b));
                let lhs = &self.inclusion * sub;
                let rhs = self.parent.bracket(
                    &self.inclusion.column(a).into_owned(),
                    &self.inclusion.column(b).into_owned(),
                );
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }

    /// Centralizer `z_h(x)` of a parent element, as h-coordinate columns.
    pub fn centralizer_in(&self, x: &Vector, tol: &TolerancePolicy) -> Matrix {
        let adx = self.parent.ad(x);
        // [z, x] = -ad_x z
        let m = adx * &self.inclusion;
        kernel_basis(&m, tol)
    }
}

/// Centralizer of a subalgebra in its parent.
#[derive(Debug, Clone)]
pub struct Centralizer {
    /// Parent-coordinate columns, orthonormal.
    pub basis: Matrix,
    /// Whether the span is closed under the bracket.
    pub is_subalgebra: bool,
}

pub fn centralizer_of_subalgebra(h: &Subalgebra, tol: &TolerancePolicy) -> Centralizer {
    let g = h.parent();
    let d = g.dim();
    let dh = h.dim();
    // Stack ad(h_j) for every h basis element.
    let mut stacked = Matrix::zeros(d * dh, d);
    for j in 0..dh {
        let adh = g.ad(&h.inclusion().column(j).into_owned());
        stacked.view_mut((j * d, 0), (d, d)).copy_from(&adh);
    }
    let basis = kernel_basis(&stacked, tol);
    let is_subalgebra = span_is_closed(g, &basis, tol);
    Centralizer {
        basis,
        is_subalgebra,
    }
}

fn span_is_closed(g: &LieAlgebra, basis: &Matrix, tol: &TolerancePolicy) -> bool {
    let k = basis.ncols();
    let proj = basis * basis.transpose();
    for a in 0..k {
        for b in (a + 1)..k {
            let br = g.bracket(&basis.column(a).into_owned(), &basis.column(b).into_owned());
            if (&br - &proj * &br).norm() > tol.feas_tol * br.norm().max(1.0) {
                return false;
            }
        }
    }
    true
}

/// The minus-Killing orthogonal complement `m` of a subalgebra.
#[derive(Debug, Clone)]
pub struct OrthogonalComplementModule {
    /// Parent-coordinate columns, orthonormal for minus the Killing form.
    pub basis: Matrix,
}

impl OrthogonalComplementModule {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

pub fn orthogonal_complement(
    h: &Subalgebra,
    tol: &TolerancePolicy,
) -> Result<OrthogonalComplementModule, LieError> {
    let g = h.parent();
    let k = g.killing_gram();
    let kh = k * h.inclusion();
    let raw = complement_basis(&kh, tol);
    // Orthonormalise with respect to the Killing form.
    let gram = raw.transpose() * k * &raw;
    let eig = sym_eigen_unchecked(&gram);
    let min = eig.values.first().copied().unwrap_or(1.0);
    if raw.ncols() + h.dim() != g.dim() || min <= tol.feas_tol {
        return Err(LieError::DegenerateComplement {
            parent: g.name().to_string(),
            sub: h.name().to_string(),
        });
    }
    let n = raw.ncols();
    let inv_sqrt = Matrix::from_fn(n, n, |r, c| {
        (0..n)
            .map(|q| eig.vectors[(r, q)] * eig.vectors[(c, q)] / eig.values[q].sqrt())
            .sum()
    });
    let basis = raw * inv_sqrt;
    let module = OrthogonalComplementModule { basis };
    let residual = reductivity_residual(h, &module);
    if residual > tol.feas_tol {
        return Err(LieError::NotReductive {
            name: format!("{}/{}", g.name(), h.name()),
            residual,
        });
    }
    Ok(module)
}

fn reductivity_residual(h: &Subalgebra, m: &OrthogonalComplementModule) -> f64 {
    let g = h.parent();
    let k = g.killing_gram();
    // Component of [h_j, m_a] along h, measured with the Killing form.
    let mut worst: f64 = 0.0;
    for j in 0..h.dim() {
        let adh = g.ad(&h.inclusion().column(j).into_owned());
        let moved = adh * &m.basis;
        let along_h = h.inclusion().transpose() * k * moved;
        worst = worst.max(along_h.amax());
    }
    worst
}

/// `G/H` at the Lie algebra level: a Killing-orthonormal `g`, a subalgebra
/// `h` and the orthogonal reductive complement `m`.
#[derive(Debug, Clone)]
pub struct HomogeneousSpace {
    name: String,
    h: Subalgebra,
    m: OrthogonalComplementModule,
    /// `isotropy[j]` is `ad(h_j)` restricted to `m`, in m-coordinates.
    isotropy: Vec<Matrix>,
}

impl HomogeneousSpace {
    pub fn new(
        name: impl Into<String>,
        h: Subalgebra,
        tol: &TolerancePolicy,
    ) -> Result<Self, LieError> {
        let g = h.parent().clone();
        if !g.is_killing_orthonormal(tol) {
            return Err(LieError::NotCompactSemisimple {
                name: format!("{} (basis not Killing-orthonormal)", g.name()),
                min_eigenvalue: f64::NAN,
            });
        }
        let m = orthogonal_complement(&h, tol)?;
        let isotropy = (0..h.dim())
            .map(|j| {
                let adh = g.ad(&h.inclusion().column(j).into_owned());
                m.basis.transpose() * adh * &m.basis
            })
            .collect();
        Ok(Self {
            name: name.into(),
            h,
            m,
            isotropy,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g(&self) -> &Arc<LieAlgebra> {
        self.h.parent()
    }

    pub fn h(&self) -> &Subalgebra {
        &self.h
    }

    pub fn m(&self) -> &OrthogonalComplementModule {
        &self.m
    }

    pub fn dim_g(&self) -> usize {
        self.g().dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    /// Matrices of the isotropy action of the h-basis on m.
    pub fn isotropy(&self) -> &[Matrix] {
        &self.isotropy
    }

    /// m-coordinates to g-coordinates.
    pub fn m_to_g(&self, x: &Vector) -> Vector {
        &self.m.basis * x
    }

    /// h-coordinates to g-coordinates.
    pub fn h_to_g(&self, z: &Vector) -> Vector {
        self.h.inclusion() * z
    }

    /// Orthonormal m-coordinate basis of `m ∩ span`, where `span` is given by
    /// g-coordinate columns of a subspace containing the intersection.
    pub fn m_part_of(&self, subspace: &Matrix, tol: &TolerancePolicy) -> Matrix {
        // Vectors of m lying in the subspace: x with (I - P_S) M x = 0.
        let s = range_basis(subspace, tol);
        let proj = &s * s.transpose();
        let d = self.dim_g();
        let off = (Matrix::identity(d, d) - proj) * &self.m.basis;
        kernel_basis(&off, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn so3_raw() -> LieAlgebra {
        let e = |r: usize, c: usize| {
            let mut m = Matrix::zeros(3, 3);
            m[(r, c)] = 1.0;
            m
        };
        // L1 = E32 - E23, L2 = E13 - E31, L3 = E21 - E12 (1-based)
        let basis = vec![e(2, 1) - e(1, 2), e(0, 2) - e(2, 0), e(1, 0) - e(0, 1)];
        LieAlgebra::from_basis("so(3)", basis, &tol()).unwrap()
    }

    #[test]
    fn so3_structure_constants_are_cyclic() {
        let g = so3_raw();
        let c = g.structure_constants();
        // Hand computation: [L1, L2] = L3, [L2, L3] = L1, [L3, L1] = L2.
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!((c.get(i, j, k) - 1.0).abs() < 1e-14);
            assert!((c.get(j, i, k) + 1.0).abs() < 1e-14);
        }
        assert_eq!(c.sparse_triples(1e-13).len(), 3);
    }

    #[test]
    fn so3_killing_is_twice_identity() {
        let g = so3_raw();
        // Brute-force ad-trace over the basis.
        let mut brute = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let mut t = 0.0;
                for k in 0..3 {
                    for l in 0..3 {
                        t += g.structure_constants().get(i, k, l)
                            * g.structure_constants().get(j, l, k);
                    }
                }
                brute[(i, j)] = -t;
            }
        }
        assert!((&brute - Matrix::identity(3, 3) * 2.0).amax() < 1e-13);
        assert!((g.killing_gram() - brute).amax() < 1e-13);
    }

    #[test]
    fn abelian_algebra_has_zero_constants_and_killing() {
        let mut j = Matrix::zeros(2, 2);
        j[(0, 1)] = -1.0;
        j[(1, 0)] = 1.0;
        let u1 = LieAlgebra::from_basis("u(1)", vec![j], &tol()).unwrap();
        assert_eq!(u1.structure_constants().get(0, 0, 0), 0.0);
        assert_eq!(u1.killing_gram()[(0, 0)], 0.0);
        assert!(matches!(
            u1.normalized(&tol()),
            Err(LieError::NotCompactSemisimple { .. })
        ));
    }

    #[test]
    fn su2_realified_has_cyclic_pattern() {
        let su2 = builders::build_su(2, &tol()).unwrap();
        assert_eq!(su2.ambient_dim(), 4);
        let c = su2.structure_constants();
        // Each bracket of distinct basis elements is a nonzero multiple of the third.
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!(c.get(i, j, k).abs() > 0.1);
            assert!(c.get(i, j, i).abs() < 1e-12 && c.get(i, j, j).abs() < 1e-12);
        }
    }

    #[test]
    fn dependent_and_non_closed_bases_are_rejected() {
        let g = so3_raw();
        let b = g.basis();
        let dep = LieAlgebra::from_basis("dep", vec![b[0].clone(), b[0].clone() * 2.0], &tol());
        assert!(matches!(dep, Err(LieError::Dependent { .. })));
        let open = LieAlgebra::from_basis("open", vec![b[0].clone(), b[1].clone()], &tol());
        assert!(matches!(open, Err(LieError::Closure { i: 0, j: 1, .. })));
    }

    #[test]
    fn normalized_basis_is_killing_orthonormal() {
        let g = so3_raw().normalized(&tol()).unwrap();
        assert!(g.is_killing_orthonormal(&tol()));
        assert!(g.jacobi_residual() < 1e-12);
        assert!(g.killing_invariance_residual() < 1e-12);
    }

    #[test]
    fn diagonal_complement_in_su2_squared() {
        let su2 = builders::build_su(2, &tol()).unwrap();
        let g = Arc::new(LieAlgebra::direct_sum("su(2)+su(2)", &[&su2, &su2], &tol()).unwrap());
        let diag = builders::diagonal_subalgebra(&g, 2, &tol()).unwrap();
        let space = HomogeneousSpace::new("diag", diag, &tol()).unwrap();
        assert_eq!(space.dim_m(), 3);
        // m is the anti-diagonal: coordinates (x, -x).
        for c in 0..3 {
            let v = space.m().basis.column(c);
            for i in 0..3 {
                assert!((v[i] + v[i + 3]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let t = tol();
        let su3 = Arc::new(builders::build_su(3, &t).unwrap());
        let su2 = builders::block_su(&su3, 3, 2, &t).unwrap();
        let z = centralizer_of_subalgebra(&su2, &t);
        assert_eq!(z.basis.ncols(), 1);
        assert!(z.is_subalgebra);
        // The generator is proportional to i diag(1, 1, -2).
        let mat = su3.element(&z.basis.column(0).into_owned());
        let (re_d, im_d): (Vec<f64>, Vec<f64>) =
            (0..3).map(|k| (mat[(k, k)], mat[(k + 3, k)])).unzip();
        assert!(re_d.iter().all(|v| v.abs() < 1e-12));
        assert!((im_d[0] - im_d[1]).abs() < 1e-12 && (im_d[2] + 2.0 * im_d[0]).abs() < 1e-12);

        let whole =
            Subalgebra::from_span(su3.clone(), "su(3)", &Matrix::identity(8, 8), &t).unwrap();
        assert_eq!(centralizer_of_subalgebra(&whole, &t).basis.ncols(), 0);

        // X = 0 is centralised by everything.
        assert_eq!(su2.centralizer_in(&Vector::zeros(8), &t).ncols(), 3);
    }
}
