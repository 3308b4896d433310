//! Geodesic-orbit verification for a metric endomorphism `A` on `m`.
//!
//! A metric is GO iff for every `X ∈ m` some `Z ∈ h` solves
//! `[X + Z, AX] = 0`. For fixed `X` this is a linear least-squares problem
//! in `Z`; [`go_feasible`] solves it and [`check_go`] samples it.
//! [`linear_graph_fit`] looks for `Z` depending linearly on `X`, which
//! characterises natural reductivity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::HomogeneousSpace;
use crate::numerics::{
    cluster_sorted, gaussian_vector, kernel_basis, seeded_rng, solve_least_squares,
    sym_eigen_unchecked, Matrix, NumericsError, SparseSystem, TolerancePolicy, Vector,
};
use crate::repmod::{stabilizer_dim, IsotypicDecomposition};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GoError {
    #[error("eigenvalue {index} is {value}, must be positive and finite")]
    NonPositiveEigenvalue { index: usize, value: f64 },
    #[error("eigenspaces are not orthonormal or do not span m (residual {residual:.3e})")]
    NotAPartition { residual: f64 },
    #[error("metric acts on dimension {metric}, space has dim m = {space}")]
    DimensionMismatch { metric: usize, space: usize },
    #[error("grouping refers to submodule {0}, which does not exist")]
    UnknownSubmodule(usize),
    #[error("submodule {0} is used by more than one or by no eigenspace")]
    BadGrouping(usize),
    #[error("{0} groups but {1} eigenvalues")]
    Arity(usize, usize),
    #[error("at least 100 samples are required, got {0}")]
    TooFewSamples(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone)]
pub struct Eigenspace {
    /// Orthonormal m-coordinate columns.
    pub basis: Matrix,
    pub alpha: f64,
    pub label: String,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// A symmetric positive operator on `m` given by its eigenspaces.
#[derive(Debug, Clone)]
pub struct MetricSpec {
    dim_m: usize,
    eigenspaces: Vec<Eigenspace>,
    matrix: Matrix,
}

impl MetricSpec {
    /// Builds `A` from eigenspaces. Eigenspaces with equal eigenvalues (to
    /// `feas_tol`, relatively) are merged, so the stored eigenvalues are
    /// pairwise distinct.
    pub fn new(
        dim_m: usize,
        spaces: Vec<Eigenspace>,
        tol: &TolerancePolicy,
    ) -> Result<Self, GoError> {
        for (index, s) in spaces.iter().enumerate() {
            if !(s.alpha.is_finite() && s.alpha > 0.0) {
                return Err(GoError::NonPositiveEigenvalue {
                    index,
                    value: s.alpha,
                });
            }
        }
        let mut merged: Vec<Eigenspace> = Vec::new();
        for s in spaces {
            if let Some(m) = merged.iter_mut().find(|m| tol.approx_eq(m.alpha, s.alpha)) {
                m.basis = Matrix::from_columns(
                    &m.basis
                        .column_iter()
                        .chain(s.basis.column_iter())
                        .map(|c| c.into_owned())
                        .collect::<Vec<_>>(),
                );
                m.label = format!("{}+{}", m.label, s.label);
            } else {
                merged.push(s);
            }
        }
        let cols: Vec<Vector> = merged
            .iter()
            .flat_map(|s| {
                s.basis
                    .column_iter()
                    .map(|c| c.into_owned())
                    .collect::<Vec<_>>()
            })
            .collect();
        if cols.len() != dim_m || cols.iter().any(|c| c.len() != dim_m) {
            return Err(GoError::NotAPartition {
                residual: f64::INFINITY,
            });
        }
        let all = Matrix::from_columns(&cols);
        let residual = (all.transpose() * &all - Matrix::identity(dim_m, dim_m)).amax();
        if residual > tol.feas_tol * 10.0 {
            return Err(GoError::NotAPartition { residual });
        }
        let mut matrix = Matrix::zeros(dim_m, dim_m);
        for s in &merged {
            matrix += &s.basis * s.basis.transpose() * s.alpha;
        }
        Ok(Self {
            dim_m,
            eigenspaces: merged,
            matrix,
        })
    }

    /// `A = alpha · id`.
    pub fn normal(dim_m: usize, alpha: f64, tol: &TolerancePolicy) -> Result<Self, GoError> {
        Self::new(
            dim_m,
            vec![Eigenspace {
                basis: Matrix::identity(dim_m, dim_m),
                alpha,
                label: "m".into(),
            }],
            tol,
        )
    }

    /// Eigenspaces given as groups of submodules of a decomposition.
    pub fn from_groups(
        dec: &IsotypicDecomposition,
        groups: &[Vec<usize>],
        alphas: &[f64],
        tol: &TolerancePolicy,
    ) -> Result<Self, GoError> {
        if groups.len() != alphas.len() {
            return Err(GoError::Arity(groups.len(), alphas.len()));
        }
        let mut used = vec![0usize; dec.submodules.len()];
        let mut spaces = Vec::new();
        for (g, &alpha) in groups.iter().zip(alphas) {
            let mut cols = Vec::new();
            for &i in g {
                let sub = dec.submodules.get(i).ok_or(GoError::UnknownSubmodule(i))?;
                used[i] += 1;
                cols.extend(sub.basis.column_iter().map(|c| c.into_owned()));
            }
            spaces.push(Eigenspace {
                basis: Matrix::from_columns(&cols),
                alpha,
                label: format!("{g:?}"),
            });
        }
        if let Some(i) = used.iter().position(|&u| u != 1) {
            return Err(GoError::BadGrouping(i));
        }
        Self::new(dec.dim, spaces, tol)
    }

    /// Eigenspaces of a symmetric positive operator.
    pub fn from_operator(a: &Matrix, tol: &TolerancePolicy) -> Result<Self, GoError> {
        let n = a.nrows();
        let eig = sym_eigen_unchecked(&((a + a.transpose()) * 0.5));
        let scale = eig
            .values
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let spaces = cluster_sorted(&eig.values, 1e-7 * scale)
            .into_iter()
            .enumerate()
            .map(|(i, r)| Eigenspace {
                alpha: eig.values[r.clone()].iter().sum::<f64>() / r.len() as f64,
                basis: eig.vectors.columns(r.start, r.len()).into_owned(),
                label: format!("e{i}"),
            })
            .collect();
        Self::new(n, spaces, tol)
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn eigenspaces(&self) -> &[Eigenspace] {
        &self.eigenspaces
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.eigenspaces.iter().map(|s| s.alpha).collect()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_normal(&self) -> bool {
        self.eigenspaces.len() == 1
    }

    pub fn scaled(&self, c: f64, tol: &TolerancePolicy) -> Result<Self, GoError> {
        let spaces = self
            .eigenspaces
            .iter()
            .map(|s| Eigenspace {
                alpha: s.alpha * c,
                ..s.clone()
            })
            .collect();
        Self::new(self.dim_m, spaces, tol)
    }

    /// Largest `|[A, ρ(Z_k)]|`; zero iff `A` is h-equivariant.
    pub fn equivariance_residual(&self, space: &HomogeneousSpace) -> f64 {
        space
            .isotropy()
            .iter()
            .map(|r| (&self.matrix * r - r * &self.matrix).amax())
            .fold(0.0, f64::max)
    }
}

/// Scales the `m_i` component of `x` by `α_i`.
pub fn apply_metric(a: &MetricSpec, x: &Vector) -> Vector {
    &a.matrix * x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Feasibility {
    Feasible,
    Inconclusive,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct GoFeasibility {
    /// Minimum-norm `Z` in h-coordinates.
    pub z: Vector,
    /// `|[X + Z, AX]| / (|X| |AX|)`.
    pub residual: f64,
    pub status: Feasibility,
}

/// Solves `[Z, AX] = [AX, X]` for `Z ∈ h` in the least-squares sense.
pub fn go_feasible(
    space: &HomogeneousSpace,
    a: &MetricSpec,
    x: &Vector,
    tol: &TolerancePolicy,
) -> GoFeasibility {
    let dh = space.dim_h();
    let ax = apply_metric(a, x);
    let scale = x.norm() * ax.norm();
    if scale == 0.0 {
        return GoFeasibility {
            z: Vector::zeros(dh),
            residual: 0.0,
            status: Feasibility::Feasible,
        };
    }
    let g = space.g();
    let xg = space.m_to_g(x);
    let axg = space.m_to_g(&ax);
    let ad_ax = g.ad(&axg);
    // [Z, AX] = -ad_{AX} Z
    let mx = -(&ad_ax * space.h().inclusion());
    let b = &ad_ax * &xg;
    let z = match solve_least_squares(&mx, &b, tol) {
        Ok(ls) => ls.x,
        Err(_) => Vector::zeros(dh),
    };
    let residual = (&mx * &z - &b).norm() / scale;
    GoFeasibility {
        status: status_of(residual, tol),
        z,
        residual,
    }
}

fn status_of(residual: f64, tol: &TolerancePolicy) -> Feasibility {
    if residual <= tol.feas_tol {
        Feasibility::Feasible
    } else if residual >= tol.reject_threshold() {
        Feasibility::Infeasible
    } else {
        Feasibility::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoVerdict {
    GoConsistent,
    NotGo,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    /// `gaussian`, `pair(i,j)` or `basis(i,k)`.
    pub kind: String,
    pub x: Vec<f64>,
    pub z: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MarginStats {
    pub feasible: usize,
    pub inconclusive: usize,
    pub infeasible: usize,
    /// Largest residual among feasible samples.
    pub worst_feasible: f64,
    /// Smallest residual among infeasible samples, if any.
    pub best_infeasible: Option<f64>,
    pub feas_tol: f64,
    pub reject_threshold: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GoReport {
    pub seed: u64,
    pub samples: usize,
    pub alphas: Vec<f64>,
    pub eigenspace_dims: Vec<usize>,
    pub verdict: GoVerdict,
    pub worst_relative_residual: f64,
    /// For a not-GO verdict, the sample with the largest residual.
    pub certificate: Option<Witness>,
    /// A few feasible `(X, Z)` pairs for audit.
    pub witnesses: Vec<Witness>,
    pub margin: MarginStats,
}

const AUDIT_WITNESSES: usize = 3;
const PAIR_SAMPLES: usize = 3;

/// The deterministic list of test vectors used by [`check_go`].
pub fn go_samples(a: &MetricSpec, n_samples: usize, seed: u64) -> Vec<(String, Vector)> {
    let mut rng = seeded_rng(seed);
    let n = a.dim_m();
    let mut out = Vec::new();
    for _ in 0..n_samples {
        let x = gaussian_vector(&mut rng, n);
        out.push(("gaussian".to_string(), x.normalize()));
    }
    let spaces = a.eigenspaces();
    for i in 0..spaces.len() {
        for j in (i + 1)..spaces.len() {
            for _ in 0..PAIR_SAMPLES {
                let xi = &spaces[i].basis * gaussian_vector(&mut rng, spaces[i].dim());
                let xj = &spaces[j].basis * gaussian_vector(&mut rng, spaces[j].dim());
                out.push((format!("pair({i},{j})"), (xi + xj).normalize()));
            }
        }
    }
    for (i, s) in spaces.iter().enumerate() {
        for k in 0..s.dim() {
            out.push((format!("basis({i},{k})"), s.basis.column(k).into_owned()));
        }
    }
    out
}

pub fn check_go(
    space: &HomogeneousSpace,
    a: &MetricSpec,
    n_samples: usize,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<GoReport, GoError> {
    if n_samples < 100 {
        return Err(GoError::TooFewSamples(n_samples));
    }
    if a.dim_m() != space.dim_m() {
        return Err(GoError::DimensionMismatch {
            metric: a.dim_m(),
            space: space.dim_m(),
        });
    }
    let samples = go_samples(a, n_samples, seed);
    let results: Vec<GoFeasibility> = samples
        .par_iter()
        .map(|(_, x)| go_feasible(space, a, x, tol))
        .collect();

    let witness = |i: usize| Witness {
        kind: samples[i].0.clone(),
        x: samples[i].1.iter().copied().collect(),
        z: results[i].z.iter().copied().collect(),
        residual: results[i].residual,
    };
    let mut margin = MarginStats {
        feasible: 0,
        inconclusive: 0,
        infeasible: 0,
        worst_feasible: 0.0,
        best_infeasible: None,
        feas_tol: tol.feas_tol,
        reject_threshold: tol.reject_threshold(),
    };
    let mut worst: Option<usize> = None;
    let mut witnesses = Vec::new();
    for (i, r) in results.iter().enumerate() {
        match r.status {
            Feasibility::Feasible => {
                margin.feasible += 1;
                margin.worst_feasible = margin.worst_feasible.max(r.residual);
                if witnesses.len() < AUDIT_WITNESSES {
                    witnesses.push(witness(i));
                }
            }
            Feasibility::Inconclusive => margin.inconclusive += 1,
            Feasibility::Infeasible => {
                margin.infeasible += 1;
                margin.best_infeasible = Some(
                    margin
                        .best_infeasible
                        .map_or(r.residual, |b| b.min(r.residual)),
                );
            }
        }
        if worst.is_none_or(|w| r.residual > results[w].residual) {
            worst = Some(i);
        }
    }
    let verdict = if margin.infeasible > 0 {
        GoVerdict::NotGo
    } else if margin.inconclusive > 0 {
        GoVerdict::Inconclusive
    } else {
        GoVerdict::GoConsistent
    };
    Ok(GoReport {
        seed,
        samples: samples.len(),
        alphas: a.alphas(),
        eigenspace_dims: a.eigenspaces().iter().map(Eigenspace::dim).collect(),
        verdict,
        worst_relative_residual: margin.worst_feasible,
        certificate: (verdict == GoVerdict::NotGo)
            .then(|| witness(worst.expect("nonempty sample"))),
        witnesses,
        margin,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StructureReport {
    /// Largest component of `[m_i, m_j]` (i ≠ j) outside `m_i ⊕ m_j`.
    pub cross_residual: f64,
    /// Largest `|[t_i, t_j]|` for the trivial parts of distinct eigenspaces.
    pub trivial_commutator_residual: f64,
    /// Eigenspaces on which a generic element has trivial centraliser in h.
    pub large_eigenspaces: Vec<usize>,
    /// Largest `|[m_i, m_j]|` over distinct large eigenspaces.
    pub large_commutator_residual: f64,
    pub pass: bool,
}

/// Necessary bracket conditions for GO metrics: `[m_i, m_j] ⊂ m_i ⊕ m_j`,
/// commuting trivial parts and commuting large eigenspaces.
pub fn bracket_structure_check(
    space: &HomogeneousSpace,
    a: &MetricSpec,
    seed: u64,
    tol: &TolerancePolicy,
) -> StructureReport {
    let g = space.g();
    let mb = &space.m().basis;
    let spaces = a.eigenspaces();
    // g-coordinate bases of each eigenspace.
    let gb: Vec<Matrix> = spaces.iter().map(|s| mb * &s.basis).collect();
    let trivial: Vec<Matrix> = spaces
        .iter()
        .zip(&gb)
        .map(|(s, b)| {
            let n = space.dim_m();
            let mut stacked = Matrix::zeros(n * space.dim_h(), s.dim());
            for (k, r) in space.isotropy().iter().enumerate() {
                stacked
                    .view_mut((k * n, 0), (n, s.dim()))
                    .copy_from(&(r * &s.basis));
            }
            b * kernel_basis(&stacked, tol)
        })
        .collect();
    let mut rng = seeded_rng(seed);
    let rep_gens = space.isotropy();
    let large: Vec<usize> = spaces
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            (0..5).all(|_| {
                let x = &s.basis * gaussian_vector(&mut rng, s.dim());
                stabilizer_dim(rep_gens, &x, tol) == 0
            })
        })
        .map(|(i, _)| i)
        .collect();

    let bracket_cols = |a: &Matrix, b: &Matrix| -> Vec<Vector> {
        let mut out = Vec::new();
        for p in a.column_iter() {
            let adp = g.ad(&p.into_owned());
            for q in b.column_iter() {
                out.push(&adp * q);
            }
        }
        out
    };
    let mut cross: f64 = 0.0;
    let mut large_res: f64 = 0.0;
    for i in 0..spaces.len() {
        for j in (i + 1)..spaces.len() {
            let both = Matrix::from_columns(
                &gb[i]
                    .column_iter()
                    .chain(gb[j].column_iter())
                    .map(|c| c.into_owned())
                    .collect::<Vec<_>>(),
            );
            let proj = &both * both.transpose();
            let pair_large = large.contains(&i) && large.contains(&j);
            for br in bracket_cols(&gb[i], &gb[j]) {
                cross = cross.max((&br - &proj * &br).amax());
                if pair_large {
                    large_res = large_res.max(br.amax());
                }
            }
        }
    }
    let mut triv: f64 = 0.0;
    for i in 0..trivial.len() {
        for j in (i + 1)..trivial.len() {
            for br in bracket_cols(&trivial[i], &trivial[j]) {
                triv = triv.max(br.amax());
            }
        }
    }
    StructureReport {
        pass: cross <= tol.feas_tol && triv <= tol.feas_tol && large_res <= tol.feas_tol,
        cross_residual: cross,
        trivial_commutator_residual: triv,
        large_eigenspaces: large,
        large_commutator_residual: large_res,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LinearGraphCertificate {
    pub accepted: bool,
    /// `L: m → h` as rows (h-coordinates) over columns (m-coordinates).
    pub l: Vec<Vec<f64>>,
    /// Residual of the polarised system relative to `max(|rhs|, α_max)`.
    pub residual: f64,
    /// Worst `|[LX + X, AX]| / (|X| |AX|)` over held-out random `X`.
    pub heldout_residual: f64,
    pub heldout_samples: usize,
}

const HELDOUT: usize = 50;

/// Searches for a linear geodesic graph `L` with `[LX + X, AX] = 0` for all
/// `X`, by solving the polarised system over basis pairs `a ≤ b`.
pub fn linear_graph_fit(
    space: &HomogeneousSpace,
    a: &MetricSpec,
    seed: u64,
    tol: &TolerancePolicy,
) -> LinearGraphCertificate {
    let g = space.g();
    let dm = space.dim_m();
    let dh = space.dim_h();
    let d = space.dim_g();
    let h = space.h().inclusion();
    let mb = &space.m().basis;
    let am = a.matrix();
    // ad(A e_a) and P_a = -ad(A e_a) H for each basis vector of m.
    let ad_ae: Vec<Matrix> = (0..dm).map(|i| g.ad(&(mb * am.column(i)))).collect();
    let p: Vec<Matrix> = ad_ae.iter().map(|ad| -(ad * h)).collect();
    let idx = |hh: usize, col: usize| col * dh + hh;
    let mut sys = SparseSystem::new(dm * dh);
    let mut row = Vec::with_capacity(2 * dh);
    for ai in 0..dm {
        let ea = mb.column(ai).into_owned();
        for bi in ai..dm {
            let eb = mb.column(bi).into_owned();
            let rhs = &ad_ae[bi] * &ea + &ad_ae[ai] * &eb;
            for k in 0..d {
                row.clear();
                for hh in 0..dh {
                    row.push((idx(hh, ai), p[bi][(k, hh)]));
                    row.push((idx(hh, bi), p[ai][(k, hh)]));
                }
                sys.push_row(&row, rhs[k]);
            }
        }
    }
    let x = sys.solve_min_norm(tol);
    let alpha_max = a.alphas().into_iter().fold(0.0, f64::max);
    let residual = sys.residual_norm(&x) / sys.rhs_norm().max(alpha_max);
    let l = Matrix::from_fn(dh, dm, |hh, col| x[idx(hh, col)]);

    let mut rng = seeded_rng(seed);
    let mut heldout: f64 = 0.0;
    for _ in 0..HELDOUT {
        let xm = gaussian_vector(&mut rng, dm).normalize();
        let ax = apply_metric(a, &xm);
        let lhs = h * (&l * &xm) + mb * &xm;
        let br = g.bracket(&lhs, &(mb * &ax));
        heldout = heldout.max(br.norm() / ax.norm());
    }
    LinearGraphCertificate {
        accepted: residual <= tol.feas_tol && heldout <= 10.0 * tol.feas_tol,
        l: crate::numerics::to_rows(&l),
        residual,
        heldout_residual: heldout,
        heldout_samples: HELDOUT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_chain, SpaceId};
    use crate::repmod::decompose_space;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn space(id: &str) -> HomogeneousSpace {
        build_chain(id.parse::<SpaceId>().unwrap(), &tol())
            .unwrap()
            .space(&tol())
            .unwrap()
    }

    fn two_block(dim: usize, split: usize, a1: f64, a2: f64) -> MetricSpec {
        let b1 = Matrix::identity(dim, dim).columns(0, split).into_owned();
        let b2 = Matrix::identity(dim, dim)
            .columns(split, dim - split)
            .into_owned();
        MetricSpec::new(
            dim,
            vec![
                Eigenspace {
                    basis: b1,
                    alpha: a1,
                    label: "1".into(),
                },
                Eigenspace {
                    basis: b2,
                    alpha: a2,
                    label: "2".into(),
                },
            ],
            &tol(),
        )
        .unwrap()
    }

    #[test]
    fn apply_metric_scales_components() {
        let a = two_block(3, 1, 1.0, 3.0);
        let x = Vector::from_vec(vec![1.0, 2.0, -1.0]);
        assert_eq!(apply_metric(&a, &x), Vector::from_vec(vec![1.0, 6.0, -3.0]));
        let id = MetricSpec::normal(3, 1.0, &tol()).unwrap();
        assert_eq!(apply_metric(&id, &x), x);
    }

    #[test]
    fn metric_validation() {
        let t = tol();
        let bad = MetricSpec::new(
            2,
            vec![Eigenspace {
                basis: Matrix::identity(2, 2),
                alpha: -1.0,
                label: "x".into(),
            }],
            &t,
        );
        assert!(matches!(bad, Err(GoError::NonPositiveEigenvalue { .. })));
        let short = MetricSpec::new(
            2,
            vec![Eigenspace {
                basis: Matrix::identity(2, 2).columns(0, 1).into_owned(),
                alpha: 1.0,
                label: "x".into(),
            }],
            &t,
        );
        assert!(matches!(short, Err(GoError::NotAPartition { .. })));
        // Equal eigenvalues merge.
        assert!(two_block(4, 2, 2.0, 2.0).is_normal());
    }

    #[test]
    fn normal_metric_needs_no_z() {
        let t = tol();
        let sp = space("table1/row8?n=1");
        let a = MetricSpec::normal(sp.dim_m(), 2.5, &t).unwrap();
        let mut rng = seeded_rng(0);
        let x = gaussian_vector(&mut rng, sp.dim_m());
        let f = go_feasible(&sp, &a, &x, &t);
        assert_eq!(f.status, Feasibility::Feasible);
        assert!(f.z.norm() < 1e-12 && f.residual < 1e-14);
        let cert = linear_graph_fit(&sp, &a, 0, &t);
        assert!(cert.accepted && cert.residual <= 1e-10);
    }

    #[test]
    fn sp2_sp1_is_go_not_naturally_reductive() {
        let t = tol();
        let sp = space("table1/row8?n=1");
        let dec = decompose_space(&sp, 0, &t).unwrap();
        let a = MetricSpec::from_groups(&dec, &[vec![0], vec![1]], &[1.0, 2.0], &t).unwrap();
        let rep = check_go(&sp, &a, 200, 3, &t).unwrap();
        assert_eq!(rep.verdict, GoVerdict::GoConsistent, "{:?}", rep.margin);
        assert!(bracket_structure_check(&sp, &a, 0, &t).pass);
        let cert = linear_graph_fit(&sp, &a, 0, &t);
        assert!(!cert.accepted);
        assert!(cert.heldout_residual > 1e-4);
    }

    #[test]
    fn too_few_samples() {
        let t = tol();
        let sp = space("table1/row8?n=1");
        let a = MetricSpec::normal(sp.dim_m(), 1.0, &t).unwrap();
        assert_eq!(
            check_go(&sp, &a, 10, 0, &t),
            Err(GoError::TooFewSamples(10))
        );
    }

    #[test]
    fn scale_invariance_of_witnesses() {
        let t = tol();
        let sp = space("table1/row9?n=2");
        let dec = decompose_space(&sp, 0, &t).unwrap();
        let a = MetricSpec::from_groups(&dec, &[vec![0], vec![1], vec![2]], &[1.0, 2.0, 3.0], &t)
            .unwrap();
        let r1 = check_go(&sp, &a, 100, 9, &t).unwrap();
        let r2 = check_go(&sp, &a.scaled(7.0, &t).unwrap(), 100, 9, &t).unwrap();
        assert_eq!(r1.verdict, GoVerdict::GoConsistent);
        assert_eq!(r1.verdict, r2.verdict);
        for (w1, w2) in r1.witnesses.iter().zip(&r2.witnesses) {
            for (z1, z2) in w1.z.iter().zip(&w2.z) {
                assert!((z1 - z2).abs() < 1e-8);
            }
        }
    }
}
