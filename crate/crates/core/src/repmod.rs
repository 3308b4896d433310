//! Orthogonal representations of a compact algebra `h` and their splitting
//! into irreducible submodules.
//!
//! Everything here is linear algebra on the generator matrices: commutants
//! are kernels of sparse linear systems, splittings come from eigenspaces of
//! random symmetric commutant elements, and irreducibility is certified by
//! the symmetric commutant being one-dimensional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::{HomogeneousSpace, LieAlgebra};
use crate::numerics::{
    cluster_sorted, complement_basis, gaussian_vector, kernel_basis, kernel_basis_scaled,
    seeded_rng, singular_values, sym_eigen_unchecked, to_rows, Matrix, Rng, SparseSystem,
    TolerancePolicy, Vector,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("representation is empty or generator shapes disagree")]
    Shape,
    #[error("generator {index} is not skew-symmetric (asymmetry {asymmetry:.3e})")]
    NotOrthogonal { index: usize, asymmetry: f64 },
    #[error("failed to split a block of dimension {dim}: symmetric commutant has dimension {commutant_dim} after {attempts} attempts")]
    SplitFailed {
        dim: usize,
        commutant_dim: usize,
        attempts: usize,
    },
    #[error("irreducibility violated for a block of dimension {dim}: skew commutant dimension {skew_dim}")]
    Irreducibility { dim: usize, skew_dim: usize },
    #[error("block of dimension {dim} is not invariant (residual {residual:.3e})")]
    NotInvariant { dim: usize, residual: f64 },
}

/// A representation by skew-symmetric matrices `ρ_k = ρ(Z_k)` for a basis
/// `Z_k` of `h`, together with `ad(Z_k)` on `h` itself.
#[derive(Debug, Clone)]
pub struct Representation {
    generators: Vec<Matrix>,
    algebra_ad: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        generators: Vec<Matrix>,
        algebra_ad: Vec<Matrix>,
        tol: &TolerancePolicy,
    ) -> Result<Self, RepError> {
        let n = generators.first().map_or(0, Matrix::nrows);
        if generators.is_empty()
            || generators.len() != algebra_ad.len()
            || generators.iter().any(|g| g.nrows() != n || g.ncols() != n)
        {
            return Err(RepError::Shape);
        }
        for (index, g) in generators.iter().enumerate() {
            let asymmetry = (g + g.transpose()).amax();
            if asymmetry > tol.feas_tol * g.amax().max(1.0) {
                return Err(RepError::NotOrthogonal { index, asymmetry });
            }
        }
        Ok(Self {
            generators,
            algebra_ad,
        })
    }

    /// The isotropy representation of `h` on `m`.
    pub fn isotropy(space: &HomogeneousSpace, tol: &TolerancePolicy) -> Result<Self, RepError> {
        let h = space.h().algebra();
        let ad = (0..h.dim()).map(|k| h.ad_basis(k).clone()).collect();
        Self::new(space.isotropy().to_vec(), ad, tol)
    }

    /// The representation by the algebra's own basis matrices.
    pub fn defining(alg: &LieAlgebra, tol: &TolerancePolicy) -> Result<Self, RepError> {
        let ad = (0..alg.dim()).map(|k| alg.ad_basis(k).clone()).collect();
        Self::new(alg.basis().to_vec(), ad, tol)
    }

    /// The adjoint representation, written in a Killing-orthonormal basis.
    pub fn adjoint(alg: &LieAlgebra, tol: &TolerancePolicy) -> Result<Self, RepError> {
        let ad: Vec<Matrix> = (0..alg.dim()).map(|k| alg.ad_basis(k).clone()).collect();
        Self::new(ad.clone(), ad, tol)
    }

    pub fn dim(&self) -> usize {
        self.generators[0].nrows()
    }

    pub fn algebra_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn algebra_ad(&self) -> &[Matrix] {
        &self.algebra_ad
    }

    /// Restriction to the span of orthonormal columns `basis` (assumed
    /// invariant; see [`Representation::invariance_residual`]).
    pub fn restrict(&self, basis: &Matrix) -> Representation {
        Representation {
            generators: self
                .generators
                .iter()
                .map(|g| basis.transpose() * g * basis)
                .collect(),
            algebra_ad: self.algebra_ad.clone(),
        }
    }

    /// Largest component of `ρ_k B` leaving the span of `B`.
    pub fn invariance_residual(&self, basis: &Matrix) -> f64 {
        let proj = basis * basis.transpose();
        self.generators
            .iter()
            .map(|g| {
                let moved = g * basis;
                (&moved - &proj * &moved).amax()
            })
            .fold(0.0, f64::max)
    }

    /// `-Σ ρ_k²`, symmetric positive semidefinite and central in the commutant.
    pub fn casimir(&self) -> Matrix {
        let n = self.dim();
        let mut c = Matrix::zeros(n, n);
        for g in &self.generators {
            c -= g * g;
        }
        (&c + c.transpose()) * 0.5
    }

    /// Joint kernel of all generators: the trivial submodule.
    pub fn trivial_part(&self, tol: &TolerancePolicy) -> Matrix {
        let n = self.dim();
        let mut stacked = Matrix::zeros(n * self.generators.len(), n);
        for (k, g) in self.generators.iter().enumerate() {
            stacked.view_mut((k * n, 0), (n, n)).copy_from(g);
        }
        kernel_basis(&stacked, tol)
    }

    pub fn is_trivial(&self, tol: &TolerancePolicy) -> bool {
        self.generators.iter().all(|g| g.amax() <= tol.feas_tol)
    }

    pub fn commutant(&self, tol: &TolerancePolicy) -> CommutantAlgebra {
        CommutantAlgebra {
            symmetric: commutant_part(&self.generators, true, tol),
            skew: commutant_part(&self.generators, false, tol),
        }
    }

    /// Dimension of `{Z ∈ h : ρ(Z) x = 0}`.
    pub fn stabilizer_dim(&self, x: &Vector, tol: &TolerancePolicy) -> usize {
        stabilizer_dim(&self.generators, x, tol)
    }

    /// Minimum stabiliser dimension over `samples` random vectors.
    pub fn generic_centralizer_dim(
        &self,
        samples: usize,
        rng: &mut Rng,
        tol: &TolerancePolicy,
    ) -> usize {
        (0..samples.max(1))
            .map(|_| {
                let x = gaussian_vector(rng, self.dim());
                self.stabilizer_dim(&x, tol)
            })
            .min()
            .unwrap_or(self.algebra_dim())
    }
}

/// Dimension of `{Z : Σ z_k ρ_k x = 0}`. The rank cut is taken relative to
/// `|x| max |ρ_k|`, so vectors fixed by everything get the full stabiliser.
pub fn stabilizer_dim(generators: &[Matrix], x: &Vector, tol: &TolerancePolicy) -> usize {
    let cols: Vec<Vector> = generators.iter().map(|g| g * x).collect();
    let scale = x.norm() * generators.iter().map(|g| g.norm()).fold(0.0, f64::max);
    kernel_basis_scaled(&Matrix::from_columns(&cols), scale, tol).ncols()
}

/// Operators commuting with a representation, split into symmetric and
/// skew-symmetric parts (the commutant of an orthogonal representation is
/// closed under transposition).
#[derive(Debug, Clone)]
pub struct CommutantAlgebra {
    pub symmetric: Vec<Matrix>,
    pub skew: Vec<Matrix>,
}

impl CommutantAlgebra {
    pub fn dim(&self) -> usize {
        self.symmetric.len() + self.skew.len()
    }

    /// Largest `|[T, ρ_k]|` over the basis.
    pub fn residual(&self, rep: &Representation) -> f64 {
        self.symmetric
            .iter()
            .chain(&self.skew)
            .flat_map(|t| rep.generators.iter().map(move |g| (t * g - g * t).amax()))
            .fold(0.0, f64::max)
    }
}

/// Solves `[T, ρ_k] = 0` for symmetric (or skew) `T`.
fn commutant_part(generators: &[Matrix], symmetric: bool, tol: &TolerancePolicy) -> Vec<Matrix> {
    let n = generators[0].nrows();
    let sign = if symmetric { 1.0 } else { -1.0 };
    // Unknowns: entries T[i][j] with i <= j (symmetric) or i < j (skew).
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j && !symmetric {
                continue;
            }
            index[i][j] = pairs.len();
            pairs.push((i, j));
        }
    }
    if pairs.is_empty() {
        return Vec::new();
    }
    // T[a][b] = factor * t[idx]
    let entry = |a: usize, b: usize| -> Option<(usize, f64)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some((index[a][b], 1.0)),
            std::cmp::Ordering::Greater => Some((index[b][a], sign)),
            std::cmp::Ordering::Equal => symmetric.then(|| (index[a][a], 1.0)),
        }
    };
    let mut sys = SparseSystem::new(pairs.len());
    let mut row = Vec::with_capacity(4 * n);
    for g in generators {
        // [T, ρ] is symmetric for symmetric T and skew for skew T.
        for r in 0..n {
            let start = if symmetric { r } else { r + 1 };
            for c in start..n {
                row.clear();
                for q in 0..n {
                    let gq = g[(q, c)];
                    if gq != 0.0 {
                        if let Some((p, f)) = entry(r, q) {
                            row.push((p, f * gq));
                        }
                    }
                    let gr = g[(r, q)];
                    if gr != 0.0 {
                        if let Some((p, f)) = entry(q, c) {
                            row.push((p, -f * gr));
                        }
                    }
                }
                if !row.is_empty() {
                    sys.push_row(&row, 0.0);
                }
            }
        }
    }
    let k = sys.kernel(tol);
    (0..k.ncols())
        .map(|col| {
            let mut t = Matrix::zeros(n, n);
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let v = k[(p, col)];
                t[(i, j)] = v;
                if i != j {
                    t[(j, i)] = sign * v;
                }
            }
            let norm = t.norm();
            t / norm
        })
        .collect()
}

/// All `T` (of shape `dim b × dim a`) with `T ρ_a(Z_k) = ρ_b(Z_k) T`.
pub fn intertwiners(a: &[Matrix], b: &[Matrix], tol: &TolerancePolicy) -> Vec<Matrix> {
    let na = a[0].nrows();
    let nb = b[0].nrows();
    let idx = |r: usize, q: usize| r * na + q;
    let mut sys = SparseSystem::new(na * nb);
    let mut row = Vec::with_capacity(na + nb);
    for (ga, gb) in a.iter().zip(b) {
        for r in 0..nb {
            for c in 0..na {
                row.clear();
                for q in 0..na {
                    let v = ga[(q, c)];
                    if v != 0.0 {
                        row.push((idx(r, q), v));
                    }
                }
                for q in 0..nb {
                    let v = gb[(r, q)];
                    if v != 0.0 {
                        row.push((idx(q, c), -v));
                    }
                }
                if !row.is_empty() {
                    sys.push_row(&row, 0.0);
                }
            }
        }
    }
    let k = sys.kernel(tol);
    (0..k.ncols())
        .map(|col| Matrix::from_fn(nb, na, |r, q| k[(idx(r, q), col)]))
        .collect()
}

/// An invertible equivariant map `a → b`, if one exists.
pub fn equivariant_isomorphism(
    a: &Representation,
    b: &Representation,
    tol: &TolerancePolicy,
) -> Option<Matrix> {
    if a.dim() != b.dim() || a.algebra_dim() != b.algebra_dim() {
        return None;
    }
    // The Casimir is a scalar on irreducibles and is preserved by isomorphisms.
    let ca = a.casimir().trace() / a.dim() as f64;
    let cb = b.casimir().trace() / b.dim() as f64;
    if (ca - cb).abs() > 1e-6 * ca.abs().max(cb.abs()).max(1.0) {
        return None;
    }
    let maps = intertwiners(&a.generators, &b.generators, tol);
    // For irreducibles any nonzero intertwiner is invertible; prefer the one
    // closest to orthogonal after scaling.
    let t = maps.into_iter().next()?;
    let s = singular_values(&t);
    let smax = s[0];
    let smin = s[s.len() - 1];
    if smax <= 0.0 || smin <= tol.rel_rank_tol.sqrt() * smax {
        return None;
    }
    let fro = s.iter().map(|v| v * v).sum::<f64>().sqrt();
    Some(t * ((a.dim() as f64).sqrt() / fro))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleType {
    Real,
    Complex,
    Quaternionic,
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    Trivial,
    Adjoint,
    Tiny,
    Large,
}

/// Type of an irreducible nontrivial module from its skew commutant.
pub fn classify_type(rep: &Representation, tol: &TolerancePolicy) -> Result<ModuleType, RepError> {
    if rep.is_trivial(tol) {
        return Ok(ModuleType::Trivial);
    }
    let comm = rep.commutant(tol);
    if comm.symmetric.len() != 1 {
        return Err(RepError::Irreducibility {
            dim: rep.dim(),
            skew_dim: comm.skew.len(),
        });
    }
    match comm.skew.len() {
        0 => Ok(ModuleType::Real),
        1 => Ok(ModuleType::Complex),
        3 => Ok(ModuleType::Quaternionic),
        skew_dim => Err(RepError::Irreducibility {
            dim: rep.dim(),
            skew_dim,
        }),
    }
}

/// Generic-centralizer dimension and size class of an irreducible module.
pub fn classify_size(
    rep: &Representation,
    samples: usize,
    rng: &mut Rng,
    tol: &TolerancePolicy,
) -> (usize, SizeClass) {
    let dh = rep.algebra_dim();
    if rep.is_trivial(tol) {
        return (dh, SizeClass::Trivial);
    }
    let gc = rep.generic_centralizer_dim(samples, rng, tol);
    if gc == 0 {
        return (0, SizeClass::Large);
    }
    if rep.dim() == dh && !intertwiners(&rep.algebra_ad, &rep.generators, tol).is_empty() {
        return (gc, SizeClass::Adjoint);
    }
    (gc, SizeClass::Tiny)
}

#[derive(Debug, Clone)]
pub struct IrreducibleSubmodule {
    /// Orthonormal columns in the coordinates of the ambient module.
    pub basis: Matrix,
    pub module_type: ModuleType,
    pub size_class: SizeClass,
    pub generic_centralizer_dim: usize,
    pub isomorphism_class: usize,
    /// Eigenvalue of the Casimir on the block.
    pub casimir: f64,
}

impl IrreducibleSubmodule {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// All blocks isomorphic to each other, and their span.
#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    pub id: usize,
    pub members: Vec<usize>,
    pub basis: Matrix,
    /// False when the split of the component into members is one arbitrary
    /// choice among many (multiplicity ≥ 2).
    pub canonical_split: bool,
}

#[derive(Debug, Clone)]
pub struct IsotypicDecomposition {
    pub dim: usize,
    pub algebra_dim: usize,
    pub seed: u64,
    pub submodules: Vec<IrreducibleSubmodule>,
    pub components: Vec<IsotypicComponent>,
}

impl IsotypicDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.submodules
            .iter()
            .map(IrreducibleSubmodule::dim)
            .collect()
    }

    /// Span of the trivial submodule (possibly zero columns).
    pub fn trivial_basis(&self) -> Matrix {
        let cols: Vec<Vector> = self
            .submodules
            .iter()
            .filter(|s| s.module_type == ModuleType::Trivial)
            .flat_map(|s| {
                s.basis
                    .column_iter()
                    .map(|c| c.into_owned())
                    .collect::<Vec<_>>()
            })
            .collect();
        if cols.is_empty() {
            Matrix::zeros(self.dim, 0)
        } else {
            Matrix::from_columns(&cols)
        }
    }

    /// Largest inner product between distinct blocks and the defect of
    /// their span from the whole module.
    pub fn orthogonality_residual(&self) -> f64 {
        let all: Vec<Vector> = self
            .submodules
            .iter()
            .flat_map(|s| {
                s.basis
                    .column_iter()
                    .map(|c| c.into_owned())
                    .collect::<Vec<_>>()
            })
            .collect();
        if all.len() != self.dim {
            return f64::INFINITY;
        }
        let b = Matrix::from_columns(&all);
        (b.transpose() * &b - Matrix::identity(self.dim, self.dim)).amax()
    }

    pub fn to_doc(&self) -> DecompositionDoc {
        DecompositionDoc {
            dim: self.dim,
            algebra_dim: self.algebra_dim,
            seed: self.seed,
            submodules: self
                .submodules
                .iter()
                .map(|s| SubmoduleDoc {
                    dim: s.dim(),
                    module_type: s.module_type,
                    size_class: s.size_class,
                    generic_centralizer_dim: s.generic_centralizer_dim,
                    isomorphism_class: s.isomorphism_class,
                    casimir: s.casimir,
                    basis: to_rows(&s.basis.transpose()),
                })
                .collect(),
            components: self
                .components
                .iter()
                .map(|c| ComponentDoc {
                    id: c.id,
                    members: c.members.clone(),
                    dim: c.basis.ncols(),
                    canonical_split: c.canonical_split,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SubmoduleDoc {
    pub dim: usize,
    #[serde(rename = "type")]
    pub module_type: ModuleType,
    pub size_class: SizeClass,
    pub generic_centralizer_dim: usize,
    pub isomorphism_class: usize,
    pub casimir: f64,
    /// One row per basis vector.
    pub basis: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComponentDoc {
    pub id: usize,
    pub members: Vec<usize>,
    pub dim: usize,
    pub canonical_split: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DecompositionDoc {
    pub dim: usize,
    pub algebra_dim: usize,
    pub seed: u64,
    pub submodules: Vec<SubmoduleDoc>,
    pub components: Vec<ComponentDoc>,
}

const MAX_SPLIT_ATTEMPTS: usize = 8;
const CENTRALIZER_SAMPLES: usize = 10;

pub fn decompose_space(
    space: &HomogeneousSpace,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<IsotypicDecomposition, RepError> {
    decompose(&Representation::isotropy(space, tol)?, seed, tol)
}

/// Splits a representation into the trivial submodule and irreducible
/// nontrivial blocks, classifies them and groups isomorphic ones.
pub fn decompose(
    rep: &Representation,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<IsotypicDecomposition, RepError> {
    let mut rng = seeded_rng(seed);
    let n = rep.dim();
    let trivial = rep.trivial_part(tol);
    let rest = complement_basis(&trivial, tol);

    let mut blocks: Vec<Matrix> = Vec::new();
    if rest.ncols() > 0 {
        // Casimir eigenspaces are invariant and separate most isotypic parts.
        let c = rep.restrict(&rest).casimir();
        let eig = sym_eigen_unchecked(&c);
        let scale = eig
            .values
            .iter()
            .fold(0.0_f64, |a, v| a.max(v.abs()))
            .max(1.0);
        for range in cluster_sorted(&eig.values, 1e-6 * scale) {
            let v = eig.vectors.columns(range.start, range.len()).into_owned();
            split(rep, rest.clone() * v, &mut rng, tol, &mut blocks)?;
        }
    }

    let mut subs: Vec<IrreducibleSubmodule> = Vec::new();
    if trivial.ncols() > 0 {
        subs.push(IrreducibleSubmodule {
            basis: trivial,
            module_type: ModuleType::Trivial,
            size_class: SizeClass::Trivial,
            generic_centralizer_dim: rep.algebra_dim(),
            isomorphism_class: 0,
            casimir: 0.0,
        });
    }
    for basis in blocks {
        let sub_rep = rep.restrict(&basis);
        let module_type = classify_type(&sub_rep, tol)?;
        let (gc, size_class) = classify_size(&sub_rep, CENTRALIZER_SAMPLES, &mut rng, tol);
        let casimir = sub_rep.casimir().trace() / basis.ncols() as f64;
        subs.push(IrreducibleSubmodule {
            basis,
            module_type,
            size_class,
            generic_centralizer_dim: gc,
            isomorphism_class: 0,
            casimir,
        });
    }
    // Trivial first is convenient internally; the report lists it last.
    subs.sort_by(|a, b| {
        (a.module_type == ModuleType::Trivial)
            .cmp(&(b.module_type == ModuleType::Trivial))
            .then(b.dim().cmp(&a.dim()))
            .then(a.casimir.total_cmp(&b.casimir))
    });

    // Group into isomorphism classes.
    let mut class_of: Vec<Option<usize>> = vec![None; subs.len()];
    let mut components: Vec<IsotypicComponent> = Vec::new();
    for i in 0..subs.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = components.len();
        class_of[i] = Some(id);
        let mut members = vec![i];
        if subs[i].module_type != ModuleType::Trivial {
            let ri = rep.restrict(&subs[i].basis);
            for j in (i + 1)..subs.len() {
                if class_of[j].is_none() && subs[j].module_type == subs[i].module_type {
                    let rj = rep.restrict(&subs[j].basis);
                    if equivariant_isomorphism(&ri, &rj, tol).is_some() {
                        class_of[j] = Some(id);
                        members.push(j);
                    }
                }
            }
        }
        let cols: Vec<Vector> = members
            .iter()
            .flat_map(|&m| {
                subs[m]
                    .basis
                    .column_iter()
                    .map(|c| c.into_owned())
                    .collect::<Vec<_>>()
            })
            .collect();
        components.push(IsotypicComponent {
            id,
            canonical_split: members.len() == 1,
            members,
            basis: Matrix::from_columns(&cols),
        });
    }
    for (s, c) in subs.iter_mut().zip(&class_of) {
        s.isomorphism_class = c.expect("every block is classified");
    }

    let dec = IsotypicDecomposition {
        dim: n,
        algebra_dim: rep.algebra_dim(),
        seed,
        submodules: subs,
        components,
    };
    for s in &dec.submodules {
        let residual = rep.invariance_residual(&s.basis);
        if residual > tol.feas_tol * 10.0 {
            return Err(RepError::NotInvariant {
                dim: s.dim(),
                residual,
            });
        }
    }
    Ok(dec)
}

/// Recursively splits an invariant subspace along eigenspaces of random
/// symmetric commutant elements until each block is irreducible.
fn split(
    rep: &Representation,
    basis: Matrix,
    rng: &mut Rng,
    tol: &TolerancePolicy,
    out: &mut Vec<Matrix>,
) -> Result<(), RepError> {
    let sub = rep.restrict(&basis);
    let sym = commutant_part(&sub.generators, true, tol);
    if sym.len() <= 1 {
        out.push(basis);
        return Ok(());
    }
    for _ in 0..MAX_SPLIT_ATTEMPTS {
        let w = gaussian_vector(rng, sym.len());
        let mut s = Matrix::zeros(basis.ncols(), basis.ncols());
        for (t, c) in sym.iter().zip(w.iter()) {
            s += t * *c;
        }
        let eig = sym_eigen_unchecked(&s);
        let spread = eig.values.last().unwrap_or(&0.0) - eig.values.first().unwrap_or(&0.0);
        let clusters = cluster_sorted(&eig.values, 1e-6 * spread.max(f64::MIN_POSITIVE));
        if clusters.len() < 2 {
            continue;
        }
        for range in clusters {
            let v = eig.vectors.columns(range.start, range.len()).into_owned();
            split(rep, &basis * v, rng, tol, out)?;
        }
        return Ok(());
    }
    Err(RepError::SplitFailed {
        dim: basis.ncols(),
        commutant_dim: sym.len(),
        attempts: MAX_SPLIT_ATTEMPTS,
    })
}

/// Largest principal angle defect between two subspaces given by
/// orthonormal columns: zero iff they coincide.
pub fn subspace_distance(a: &Matrix, b: &Matrix) -> f64 {
    if a.ncols() != b.ncols() {
        return f64::INFINITY;
    }
    let pa = a * a.transpose();
    let pb = b * b.transpose();
    (pa - pb).amax()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_chain, build_so, build_sp, build_spin7_in_so8, build_su, SpaceId};

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn space(id: &str) -> HomogeneousSpace {
        build_chain(id.parse::<SpaceId>().unwrap(), &tol())
            .unwrap()
            .space(&tol())
            .unwrap()
    }

    #[test]
    fn defining_module_types() {
        let t = tol();
        let su3 = build_su(3, &t).unwrap();
        let rep = Representation::defining(&su3, &t).unwrap();
        assert_eq!(classify_type(&rep, &t).unwrap(), ModuleType::Complex);
        let sp2 = build_sp(2, &t).unwrap();
        let rep = Representation::defining(&sp2, &t).unwrap();
        assert_eq!(classify_type(&rep, &t).unwrap(), ModuleType::Quaternionic);
        let spin7 = build_spin7_in_so8(&t).unwrap();
        let rep = Representation::defining(spin7.algebra(), &t).unwrap();
        assert_eq!(classify_type(&rep, &t).unwrap(), ModuleType::Real);
        let mut rng = seeded_rng(1);
        assert_eq!(classify_size(&rep, 10, &mut rng, &t), (14, SizeClass::Tiny));
    }

    #[test]
    fn commutant_of_complex_standard() {
        let t = tol();
        let su3 = build_su(3, &t).unwrap();
        let rep = Representation::defining(&su3, &t).unwrap();
        let c = rep.commutant(&t);
        assert_eq!((c.symmetric.len(), c.skew.len()), (1, 1));
        assert!(c.residual(&rep) < 1e-10);
    }

    #[test]
    fn reducible_sum_is_split() {
        let t = tol();
        let so4 = build_so(4, &t).unwrap();
        // R^4 ⊕ R^4 ⊕ R^1 (trivial) as a 9-dimensional module.
        let gens: Vec<Matrix> = so4
            .basis()
            .iter()
            .map(|b| {
                let mut m = Matrix::zeros(9, 9);
                m.view_mut((0, 0), (4, 4)).copy_from(b);
                m.view_mut((4, 4), (4, 4)).copy_from(b);
                m
            })
            .collect();
        let ad = (0..6).map(|k| so4.ad_basis(k).clone()).collect();
        let rep = Representation::new(gens, ad, &t).unwrap();
        let dec = decompose(&rep, 5, &t).unwrap();
        assert_eq!(dec.dims(), vec![4, 4, 1]);
        assert_eq!(
            dec.submodules[0].isomorphism_class,
            dec.submodules[1].isomorphism_class
        );
        assert!(!dec.components[0].canonical_split);
        assert!(dec.orthogonality_residual() < 1e-10);
    }

    #[test]
    fn sp2_over_sp1() {
        let t = tol();
        let dec = decompose_space(&space("table1/row8?n=1"), 0, &t).unwrap();
        assert_eq!(dec.dims(), vec![4, 3]);
        assert_eq!(dec.submodules[0].module_type, ModuleType::Quaternionic);
        assert_eq!(dec.submodules[0].size_class, SizeClass::Large);
        assert_eq!(dec.submodules[1].module_type, ModuleType::Trivial);
    }

    #[test]
    fn diagonal_complement_is_adjoint() {
        let t = tol();
        let dec = decompose_space(&space("ledger-obata?k=2"), 0, &t).unwrap();
        assert_eq!(dec.dims(), vec![3]);
        assert_eq!(dec.submodules[0].size_class, SizeClass::Adjoint);
    }

    #[test]
    fn isomorphism_with_itself_and_absent_across_dims() {
        let t = tol();
        let spin7 = build_spin7_in_so8(&t).unwrap();
        let rep = Representation::defining(spin7.algebra(), &t).unwrap();
        let iso = equivariant_isomorphism(&rep, &rep, &t).unwrap();
        // Real type: the only intertwiners are scalars.
        let scale = iso[(0, 0)];
        assert!((iso - Matrix::identity(8, 8) * scale).amax() < 1e-8);
        let adj = Representation::adjoint(spin7.algebra(), &t).unwrap();
        assert!(equivariant_isomorphism(&rep, &adj, &t).is_none());
    }

    #[test]
    fn spin8_over_g2_is_isotypic() {
        let t = tol();
        let sp = space("table1/row10");
        let a = decompose_space(&sp, 1, &t).unwrap();
        let b = decompose_space(&sp, 2, &t).unwrap();
        assert_eq!(a.dims(), vec![7, 7]);
        assert_eq!(a.components.len(), 1);
        assert!(subspace_distance(&a.components[0].basis, &b.components[0].basis) < 1e-8);
    }
}
