//! Table 1 as executable data: eigenspace blueprints built from the
//! embedding chains, closed-form GO conditions, and verification campaigns
//! that compare the conditions against the numerical checker. Also the
//! tiny-module regression data (generic stationary subalgebras).

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builders::{
    build_chain, build_g2, build_so, build_sp, build_spin7_in_so8, build_spin9, build_su,
    symplectic_in_su, unitary_part, BuildError, EmbeddingChain, SpaceId, Table1Row,
};
use crate::gocheck::{
    bracket_structure_check, check_go, linear_graph_fit, Eigenspace, GoError, GoVerdict,
    MetricSpec, StructureReport, Witness,
};
use crate::liealg::{centralizer_of_subalgebra, HomogeneousSpace};
use crate::numerics::{kernel_basis_scaled, range_basis, seeded_rng, Matrix, Rng, TolerancePolicy};
use crate::repmod::{
    classify_type, decompose_space, equivariant_isomorphism, IsotypicDecomposition, ModuleType,
    RepError, Representation,
};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Go(#[from] GoError),
    #[error("{row} takes {expected} eigenvalues, got {got}")]
    Arity {
        row: String,
        expected: usize,
        got: usize,
    },
    #[error("eigenvalue {index} is {value}; must be positive")]
    NonPositive { index: usize, value: f64 },
    #[error("blueprint for {row}: {detail}")]
    Blueprint { row: String, detail: String },
    #[error("{0} is not a row (6) space")]
    NotRow6(String),
}

/// Number of eigenvalues in the row's metric.
pub fn arity(row: Table1Row) -> usize {
    match row {
        Table1Row::Row6 { n } if n % 2 == 1 => 3,
        Table1Row::Row9 { .. } => 3,
        _ => 2,
    }
}

/// `ρ = 1 − α₂/α₁`, `σ = 1 − α₃/α₂`, `τ = 1 − α₃/α₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedCoefficients {
    pub rho: f64,
    pub sigma: f64,
    pub tau: f64,
}

impl ReducedCoefficients {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        Self {
            rho: 1.0 - a2 / a1,
            sigma: 1.0 - a3 / a2,
            tau: 1.0 - a3 / a1,
        }
    }

    /// `(1 − τ) − (1 − σ)(1 − ρ)`, zero by definition.
    pub fn identity_residual(&self) -> f64 {
        (1.0 - self.tau) - (1.0 - self.sigma) * (1.0 - self.rho)
    }

    /// The odd-n row (6) identity `n/α₃ = (n−1)/α₂ + 1/α₁` multiplied by
    /// `α₃`: `(n−1)σ + τ = 0`.
    pub fn row6_odd(&self, n: usize) -> f64 {
        (n as f64 - 1.0) * self.sigma + self.tau
    }
}

fn rel_eq(a: f64, b: f64, tol: &TolerancePolicy) -> bool {
    (a - b).abs() <= tol.feas_tol * a.abs().max(b.abs())
}

fn check_alphas(row: Table1Row, alphas: &[f64]) -> Result<(), CatalogError> {
    if alphas.len() != arity(row) {
        return Err(CatalogError::Arity {
            row: row.to_string(),
            expected: arity(row),
            got: alphas.len(),
        });
    }
    if let Some((index, &value)) = alphas
        .iter()
        .enumerate()
        .find(|(_, a)| !(a.is_finite() && **a > 0.0))
    {
        return Err(CatalogError::NonPositive { index, value });
    }
    Ok(())
}

/// The table's condition on the eigenvalues (the metric is GO and not
/// naturally reductive).
pub fn condition(
    row: Table1Row,
    alphas: &[f64],
    tol: &TolerancePolicy,
) -> Result<bool, CatalogError> {
    check_alphas(row, alphas)?;
    let ne = !rel_eq(alphas[0], alphas[1], tol);
    Ok(match row {
        Table1Row::Row6 { n } if n % 2 == 1 => {
            let lhs = n as f64 / alphas[2];
            let rhs = (n as f64 - 1.0) / alphas[1] + 1.0 / alphas[0];
            rel_eq(lhs, rhs, tol) && ne
        }
        Table1Row::Row9 { .. } => {
            !(rel_eq(alphas[0], alphas[1], tol) && rel_eq(alphas[1], alphas[2], tol))
        }
        _ => ne,
    })
}

pub fn is_normal(alphas: &[f64], tol: &TolerancePolicy) -> bool {
    alphas.iter().all(|a| rel_eq(*a, alphas[0], tol))
}

/// The metric is GO: the condition holds or the metric is normal.
pub fn expected_go(
    row: Table1Row,
    alphas: &[f64],
    tol: &TolerancePolicy,
) -> Result<bool, CatalogError> {
    Ok(condition(row, alphas, tol)? || is_normal(alphas, tol))
}

/// Eigenspaces of a metric endomorphism on `m`, in m-coordinates.
#[derive(Debug, Clone)]
pub struct Blueprint {
    pub labels: Vec<String>,
    pub bases: Vec<Matrix>,
}

impl Blueprint {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.ncols()).collect()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn metric(
        &self,
        alphas: &[f64],
        tol: &TolerancePolicy,
    ) -> Result<MetricSpec, CatalogError> {
        if alphas.len() != self.len() {
            return Err(CatalogError::Arity {
                row: self.labels.join(","),
                expected: self.len(),
                got: alphas.len(),
            });
        }
        let dim = self.bases.iter().map(|b| b.ncols()).sum();
        let spaces = self
            .bases
            .iter()
            .zip(alphas)
            .zip(&self.labels)
            .map(|((b, &alpha), l)| Eigenspace {
                basis: b.clone(),
                alpha,
                label: l.clone(),
            })
            .collect();
        Ok(MetricSpec::new(dim, spaces, tol)?)
    }

    /// Moves the span of `sub` (m-coordinates, inside eigenspace `k`) into a
    /// new last eigenspace.
    pub fn split(&self, k: usize, sub: &Matrix, label: &str, tol: &TolerancePolicy) -> Blueprint {
        let mut out = self.clone();
        let sub = range_basis(sub, tol);
        out.bases[k] = orthogonal_rest(&self.bases[k], &sub, tol);
        out.bases.push(sub);
        out.labels.push(label.to_string());
        out
    }

    /// Largest `|ρ(Z) P − P ρ(Z) P|` over eigenspaces; zero iff every
    /// eigenspace is h-invariant.
    pub fn invariance_residual(&self, space: &HomogeneousSpace) -> f64 {
        let mut worst: f64 = 0.0;
        for b in &self.bases {
            let proj = b * b.transpose();
            for r in space.isotropy() {
                let moved = r * b;
                worst = worst.max((&moved - &proj * &moved).amax());
            }
        }
        worst
    }

    /// Largest deviation from "each nontrivial isotypic component lies in a
    /// single eigenspace".
    pub fn isotypic_residual(&self, dec: &IsotypicDecomposition) -> f64 {
        let mut worst: f64 = 0.0;
        for comp in &dec.components {
            if dec.submodules[comp.members[0]].module_type == ModuleType::Trivial {
                continue;
            }
            let best = self
                .bases
                .iter()
                .map(|b| (&comp.basis - b * (b.transpose() * &comp.basis)).amax())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
        worst
    }
}

/// Orthonormal basis of `span(a) ⊖ span(b)` (`b` orthonormal).
fn orthogonal_rest(a: &Matrix, b: &Matrix, tol: &TolerancePolicy) -> Matrix {
    let rest = a - b * (b.transpose() * a);
    if rest.ncols() == 0 {
        return rest;
    }
    range_basis(&rest, tol)
}

/// How an eigenspace is cut out of the chain.
#[derive(Debug, Clone, Copy)]
enum Piece {
    /// `m ∩ level i`.
    Inside(usize),
    /// `m ∩ centraliser of level i`.
    Centralizer(usize),
    /// Whatever is left.
    Rest,
}

/// `(eigenvalue index, piece)` in assignment order.
fn pieces(row: Table1Row) -> Vec<(usize, Piece)> {
    use Piece::*;
    match row {
        Table1Row::Row5 { .. } | Table1Row::Row7 { .. } => vec![(1, Centralizer(1)), (0, Rest)],
        Table1Row::Row6 { n } if n % 2 == 1 => vec![(2, Centralizer(1)), (1, Inside(2)), (0, Rest)],
        Table1Row::Row6 { .. } => vec![(1, Inside(2)), (0, Rest)],
        Table1Row::Row9 { .. } => vec![(2, Centralizer(1)), (1, Inside(1)), (0, Rest)],
        _ => vec![(1, Inside(1)), (0, Rest)],
    }
}

fn assemble(
    id: &str,
    chain: &EmbeddingChain,
    space: &HomogeneousSpace,
    plan: &[(usize, Piece)],
    tol: &TolerancePolicy,
) -> Result<Blueprint, CatalogError> {
    let dm = space.dim_m();
    let mut bases = vec![Matrix::zeros(dm, 0); plan.len()];
    let mut taken = Matrix::zeros(dm, 0);
    for &(slot, piece) in plan {
        let raw = match piece {
            Piece::Inside(i) => space.m_part_of(chain.levels[i].inclusion(), tol),
            Piece::Centralizer(i) => {
                space.m_part_of(&centralizer_of_subalgebra(&chain.levels[i], tol).basis, tol)
            }
            Piece::Rest => Matrix::identity(dm, dm),
        };
        let b = orthogonal_rest(&raw, &taken, tol);
        if b.ncols() == 0 {
            return Err(CatalogError::Blueprint {
                row: id.to_string(),
                detail: format!("eigenspace {} is empty", slot + 1),
            });
        }
        taken = Matrix::from_columns(
            &taken
                .column_iter()
                .chain(b.column_iter())
                .map(|c| c.into_owned())
                .collect::<Vec<_>>(),
        );
        bases[slot] = b;
    }
    Ok(Blueprint {
        labels: (1..=plan.len()).map(|i| format!("m{i}")).collect(),
        bases,
    })
}

/// Rows whose table eigenspaces put isomorphic copies of one module into
/// different eigenspaces: row (10), row (11) (three copies of `R^7`) and
/// row (6) with `n = 3` (`C^3` and `Λ²C^3` are isomorphic for su(3)).
pub fn splits_isotypic(row: Table1Row) -> bool {
    matches!(
        row,
        Table1Row::Row10 | Table1Row::Row11 | Table1Row::Row6 { n: 3 }
    )
}

/// A built row: space, decomposition and the table's blueprint.
pub struct RowSetup {
    pub row: Table1Row,
    pub chain: EmbeddingChain,
    pub space: HomogeneousSpace,
    pub decomposition: IsotypicDecomposition,
    pub blueprint: Blueprint,
}

impl RowSetup {
    pub fn new(row: Table1Row, tol: &TolerancePolicy) -> Result<Self, CatalogError> {
        let chain = build_chain(SpaceId::Table1(row), tol)?;
        let space = chain.space(tol)?;
        let decomposition = decompose_space(&space, 0, tol)?;
        let blueprint = assemble(&row.to_string(), &chain, &space, &pieces(row), tol)?;
        let setup = Self {
            row,
            chain,
            space,
            decomposition,
            blueprint,
        };
        let inv = setup.blueprint.invariance_residual(&setup.space);
        let iso = if splits_isotypic(row) {
            0.0
        } else {
            setup.blueprint.isotypic_residual(&setup.decomposition)
        };
        if inv > 1e-8 || iso > 1e-6 {
            return Err(CatalogError::Blueprint {
                row: row.to_string(),
                detail: format!("invariance residual {inv:.3e}, isotypic residual {iso:.3e}"),
            });
        }
        Ok(setup)
    }

    /// Row (10) only: the two 7-dimensional eigenspaces rotated by `theta`
    /// inside their isotypic component. Other rows return the blueprint.
    pub fn rotated_blueprint(
        &self,
        theta: f64,
        tol: &TolerancePolicy,
    ) -> Result<Blueprint, CatalogError> {
        if self.row != Table1Row::Row10 {
            return Ok(self.blueprint.clone());
        }
        let rep = Representation::isotropy(&self.space, tol)?;
        let (b1, b2) = (&self.blueprint.bases[0], &self.blueprint.bases[1]);
        let t = equivariant_isomorphism(&rep.restrict(b1), &rep.restrict(b2), tol).ok_or_else(
            || CatalogError::Blueprint {
                row: self.row.to_string(),
                detail: "the two 7-dimensional modules are not isomorphic".into(),
            },
        )?;
        let img = b2 * t;
        let (c, s) = (theta.cos(), theta.sin());
        Ok(Blueprint {
            labels: self.blueprint.labels.clone(),
            bases: vec![b1 * c + &img * s, &img * c - b1 * s],
        })
    }

    /// Row (6): `m₁ = Cⁿ`, `m₂ = so(2n) ⊖ u(n)`, `m₃ = R` for either parity.
    pub fn row6_fine_blueprint(&self, tol: &TolerancePolicy) -> Result<Blueprint, CatalogError> {
        let Table1Row::Row6 { .. } = self.row else {
            return Err(CatalogError::NotRow6(self.row.to_string()));
        };
        use Piece::*;
        assemble(
            &self.row.to_string(),
            &self.chain,
            &self.space,
            &[(2, Centralizer(1)), (1, Inside(2)), (0, Rest)],
            tol,
        )
    }

    /// Wrong-shape blueprints that should not be GO for generic distinct
    /// eigenvalues. Empty for row (6₁), whose negatives come from the
    /// eigenvalue condition.
    pub fn negative_blueprints(
        &self,
        tol: &TolerancePolicy,
    ) -> Result<Vec<(String, Blueprint)>, CatalogError> {
        let bp = &self.blueprint;
        let trivial = self.decomposition.trivial_basis();
        let trivial_in = |k: usize| {
            let b = &bp.bases[k];
            // Trivial vectors inside eigenspace k.
            let dm = b.nrows();
            let off = (Matrix::identity(dm, dm) - b * b.transpose()) * &trivial;
            &trivial * kernel_basis_scaled(&off, 1.0, tol)
        };
        let half = |k: usize| {
            let b = &bp.bases[k];
            b.columns(0, b.ncols() / 2).into_owned()
        };
        let out = match self.row {
            Table1Row::Row2 | Table1Row::Row3 | Table1Row::Row11 | Table1Row::Row5 { .. } => {
                let t = trivial_in(0);
                if t.ncols() > 0 {
                    vec![(
                        "trivial part of m1 split off".to_string(),
                        bp.split(0, &t, "t", tol),
                    )]
                } else {
                    // su(1) = 0: m1 is irreducible.
                    vec![(
                        "m1 split into non-invariant halves".to_string(),
                        bp.split(0, &half(0), "m1'", tol),
                    )]
                }
            }
            Table1Row::Row6 { n } if n % 2 == 0 => {
                vec![(
                    "trivial part of m2 split off".to_string(),
                    self.row6_fine_blueprint(tol)?,
                )]
            }
            Table1Row::Row6 { .. } => Vec::new(),
            Table1Row::Row8 { .. } => {
                let first = bp.bases[1].columns(0, 1).into_owned();
                vec![(
                    "m2 split as 1 + 2".to_string(),
                    bp.split(1, &first, "m2'", tol),
                )]
            }
            Table1Row::Row1
            | Table1Row::Row7 { .. }
            | Table1Row::Row9 { .. }
            | Table1Row::Row10 => {
                vec![(
                    "m1 split into non-invariant halves".to_string(),
                    bp.split(0, &half(0), "m1'", tol),
                )]
            }
        };
        Ok(out)
    }
}

fn distinct_alphas(rng: &mut Rng, k: usize) -> Vec<f64> {
    loop {
        let scale: f64 = rng.random_range(0.5..2.0);
        let a: Vec<f64> = (0..k)
            .map(|_| scale * rng.random_range(0.25_f64..4.0))
            .collect();
        let separated = (0..k).all(|i| ((i + 1)..k).all(|j| (a[i] / a[j] - 1.0).abs() > 0.15));
        if separated {
            return a;
        }
    }
}

fn row6_alpha3(n: usize, a1: f64, a2: f64) -> f64 {
    n as f64 / ((n as f64 - 1.0) / a2 + 1.0 / a1)
}

/// Condition-satisfying, non-normal eigenvalue vectors.
pub fn positive_alphas(row: Table1Row, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|i| match row {
            Table1Row::Row6 { n } if n % 2 == 1 => {
                let a = distinct_alphas(&mut rng, 2);
                vec![a[0], a[1], row6_alpha3(n, a[0], a[1])]
            }
            Table1Row::Row9 { .. } if i % 3 == 2 => {
                // Two eigenspaces merged is still allowed.
                let a = distinct_alphas(&mut rng, 2);
                let mut v = vec![a[0], a[0], a[1]];
                v.shuffle(&mut rng);
                v
            }
            _ => distinct_alphas(&mut rng, arity(row)),
        })
        .collect()
}

/// Row (6₁) eigenvalues violating the identity by 10% to 50%.
pub fn row6_violating_alphas(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|i| {
            let a = distinct_alphas(&mut rng, 2);
            let f: f64 = rng.random_range(1.1..1.5);
            let f = if i % 2 == 0 { f } else { 1.0 / f };
            vec![a[0], a[1], row6_alpha3(n, a[0], a[1]) * f]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Positive,
    Negative,
    Normal,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LinearGraphSummary {
    pub accepted: bool,
    pub residual: f64,
    pub heldout_residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Instance {
    pub kind: InstanceKind,
    pub blueprint: String,
    pub eigenspace_dims: Vec<usize>,
    pub alphas: Vec<f64>,
    /// `None` when the blueprint is not the table's shape.
    pub condition: Option<bool>,
    pub expected_go: bool,
    pub seed: u64,
    pub verdict: GoVerdict,
    pub samples: usize,
    pub worst_feasible_residual: f64,
    pub certificate: Option<Witness>,
    pub linear_graph: Option<LinearGraphSummary>,
    pub structure: Option<StructureReport>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RowCampaign {
    pub row: String,
    pub seed: u64,
    pub blueprint_dims: Vec<usize>,
    pub submodule_dims: Vec<usize>,
    pub instances: Vec<Instance>,
    pub agreement: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct CampaignConfig {
    pub samples: usize,
    pub positives: usize,
    pub negatives: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            samples: 200,
            positives: 5,
            negatives: 5,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_instance(
    setup: &RowSetup,
    kind: InstanceKind,
    label: &str,
    bp: &Blueprint,
    alphas: Vec<f64>,
    condition: Option<bool>,
    expected: bool,
    seed: u64,
    cfg: &CampaignConfig,
    tol: &TolerancePolicy,
) -> Result<Instance, CatalogError> {
    let a = bp.metric(&alphas, tol)?;
    let report = check_go(&setup.space, &a, cfg.samples, seed, tol)?;
    let go = report.verdict == GoVerdict::GoConsistent;
    let mut agrees = match report.verdict {
        GoVerdict::Inconclusive => false,
        _ => go == expected,
    };
    let mut linear_graph = None;
    let mut structure = None;
    if go {
        let fit = linear_graph_fit(&setup.space, &a, seed, tol);
        agrees &= if a.is_normal() {
            fit.accepted && fit.residual <= 1e-10
        } else {
            !fit.accepted && fit.heldout_residual > tol.reject_threshold()
        };
        linear_graph = Some(LinearGraphSummary {
            accepted: fit.accepted,
            residual: fit.residual,
            heldout_residual: fit.heldout_residual,
        });
        let s = bracket_structure_check(&setup.space, &a, seed, tol);
        agrees &= s.pass;
        structure = Some(s);
    } else if report.verdict == GoVerdict::NotGo {
        agrees &= report
            .certificate
            .as_ref()
            .is_some_and(|w| w.residual > tol.reject_threshold());
    }
    Ok(Instance {
        kind,
        blueprint: label.to_string(),
        eigenspace_dims: a.eigenspaces().iter().map(Eigenspace::dim).collect(),
        alphas,
        condition,
        expected_go: expected,
        seed,
        verdict: report.verdict,
        samples: report.samples,
        worst_feasible_residual: report.worst_relative_residual,
        certificate: report.certificate,
        linear_graph,
        structure,
        agrees,
    })
}

/// Positive, normal and negative instances for one row and seed.
pub fn verify_row(
    setup: &RowSetup,
    seed: u64,
    cfg: &CampaignConfig,
    tol: &TolerancePolicy,
) -> Result<RowCampaign, CatalogError> {
    let row = setup.row;
    let mut rng = seeded_rng(seed ^ 0x7ab1e1);
    let mut instances = Vec::new();
    let mut sub_seed = seed.wrapping_mul(1000);
    let mut next_seed = || {
        sub_seed += 1;
        sub_seed
    };

    for alphas in positive_alphas(row, cfg.positives, seed) {
        let bp = if row == Table1Row::Row10 {
            setup.rotated_blueprint(rng.random_range(0.0..std::f64::consts::PI), tol)?
        } else {
            setup.blueprint.clone()
        };
        let cond = condition(row, &alphas, tol)?;
        let label = if row == Table1Row::Row10 {
            "table, rotated"
        } else {
            "table"
        };
        instances.push(run_instance(
            setup,
            InstanceKind::Positive,
            label,
            &bp,
            alphas,
            Some(cond),
            true,
            next_seed(),
            cfg,
            tol,
        )?);
    }

    let normal = vec![rng.random_range(0.5..2.0); arity(row)];
    let cond = condition(row, &normal, tol)?;
    instances.push(run_instance(
        setup,
        InstanceKind::Normal,
        "table",
        &setup.blueprint,
        normal,
        Some(cond),
        true,
        next_seed(),
        cfg,
        tol,
    )?);

    match row {
        Table1Row::Row6 { n } if n % 2 == 1 => {
            for alphas in row6_violating_alphas(n, cfg.negatives, seed) {
                let cond = condition(row, &alphas, tol)?;
                let expected = expected_go(row, &alphas, tol)?;
                instances.push(run_instance(
                    setup,
                    InstanceKind::Negative,
                    "table, identity violated",
                    &setup.blueprint,
                    alphas,
                    Some(cond),
                    expected,
                    next_seed(),
                    cfg,
                    tol,
                )?);
            }
        }
        _ => {
            let negs = setup.negative_blueprints(tol)?;
            for i in 0..cfg.negatives {
                let (label, bp) = &negs[i % negs.len()];
                let alphas = distinct_alphas(&mut rng, bp.len());
                instances.push(run_instance(
                    setup,
                    InstanceKind::Negative,
                    label,
                    bp,
                    alphas,
                    None,
                    false,
                    next_seed(),
                    cfg,
                    tol,
                )?);
            }
        }
    }

    let agreement = instances.iter().all(|i| i.agrees);
    Ok(RowCampaign {
        row: row.to_string(),
        seed,
        blueprint_dims: setup.blueprint.dims(),
        submodule_dims: setup.decomposition.dims(),
        instances,
        agreement,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CrosscheckReport {
    pub n: usize,
    pub alphas: Vec<f64>,
    pub reduced: ReducedCoefficients,
    pub normal: bool,
    pub closed_form: bool,
    pub sampler: bool,
    pub verdict: GoVerdict,
    pub agree: bool,
}

/// Row (6) with `m₁ = Cⁿ`, `m₂ = so(2n) ⊖ u(n)`, `m₃ = R`: the closed form
/// (`(n−1)σ + τ = 0` for odd `n`, `σ = 0` for even `n`) against the
/// sampler. Two eigenvalues mean `α₃ = α₂`.
pub fn reduced_condition_crosscheck(
    setup: &RowSetup,
    alphas: &[f64],
    seed: u64,
    samples: usize,
    tol: &TolerancePolicy,
) -> Result<CrosscheckReport, CatalogError> {
    let Table1Row::Row6 { n } = setup.row else {
        return Err(CatalogError::NotRow6(setup.row.to_string()));
    };
    let full: Vec<f64> = match alphas.len() {
        2 => vec![alphas[0], alphas[1], alphas[1]],
        3 => alphas.to_vec(),
        got => {
            return Err(CatalogError::Arity {
                row: setup.row.to_string(),
                expected: 3,
                got,
            })
        }
    };
    if let Some((index, &value)) = full
        .iter()
        .enumerate()
        .find(|(_, a)| !(a.is_finite() && **a > 0.0))
    {
        return Err(CatalogError::NonPositive { index, value });
    }
    let r = ReducedCoefficients::new(full[0], full[1], full[2]);
    let normal = is_normal(&full, tol);
    let closed_form = if n % 2 == 1 {
        // (n−1)σ + τ is a sum of terms of size ~1, so compare absolutely.
        r.row6_odd(n).abs() <= tol.feas_tol * (n as f64)
    } else {
        r.sigma.abs() <= tol.feas_tol
    };
    let bp = setup.row6_fine_blueprint(tol)?;
    let a = bp.metric(&full, tol)?;
    let report = check_go(&setup.space, &a, samples, seed, tol)?;
    let sampler = report.verdict == GoVerdict::GoConsistent;
    Ok(CrosscheckReport {
        n,
        alphas: full,
        reduced: r,
        normal,
        closed_form,
        sampler,
        verdict: report.verdict,
        agree: report.verdict != GoVerdict::Inconclusive && closed_form == sampler,
    })
}

/// A tiny module with its tabulated type and stationary subalgebra.
pub struct Table2Module {
    pub name: String,
    pub expected_type: ModuleType,
    pub expected_stationary_dim: usize,
    pub rep: Representation,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Table2Result {
    pub name: String,
    pub dim: usize,
    pub algebra_dim: usize,
    pub expected_type: ModuleType,
    pub measured_type: ModuleType,
    pub expected_stationary_dim: usize,
    pub measured_stationary_dim: usize,
    pub pass: bool,
}

fn s_module(
    space: &HomogeneousSpace,
    dim: usize,
    tol: &TolerancePolicy,
) -> Result<Representation, CatalogError> {
    let dec = decompose_space(space, 0, tol)?;
    let sub = dec
        .submodules
        .iter()
        .find(|s| s.dim() == dim)
        .ok_or_else(|| CatalogError::Blueprint {
            row: space.name().to_string(),
            detail: format!("no irreducible submodule of dimension {dim}"),
        })?;
    Ok(Representation::isotropy(space, tol)?.restrict(&sub.basis))
}

/// The in-scope modules: standard modules of so(5..8), su(3..6), sp(2..3),
/// spin(7) and spin(9) spinors, the g2 module, and the s-modules of su(5),
/// su(6) and sp(3).
pub fn table2_modules(tol: &TolerancePolicy) -> Result<Vec<Table2Module>, CatalogError> {
    let mut out = Vec::new();
    for n in 5..=8 {
        out.push(Table2Module {
            name: format!("so({n}) standard"),
            expected_type: ModuleType::Real,
            expected_stationary_dim: (n - 1) * (n - 2) / 2,
            rep: Representation::defining(&build_so(n, tol)?, tol)?,
        });
    }
    for n in 3..=6 {
        out.push(Table2Module {
            name: format!("su({n}) standard"),
            expected_type: ModuleType::Complex,
            expected_stationary_dim: (n - 1) * (n - 1) - 1,
            rep: Representation::defining(&build_su(n, tol)?, tol)?,
        });
    }
    for n in 2..=3 {
        out.push(Table2Module {
            name: format!("sp({n}) standard"),
            expected_type: ModuleType::Quaternionic,
            expected_stationary_dim: (n - 1) * (2 * n - 1),
            rep: Representation::defining(&build_sp(n, tol)?, tol)?,
        });
    }
    out.push(Table2Module {
        name: "spin(7) spin".into(),
        expected_type: ModuleType::Real,
        expected_stationary_dim: 14,
        rep: Representation::defining(build_spin7_in_so8(tol)?.algebra(), tol)?,
    });
    out.push(Table2Module {
        name: "spin(9) spin".into(),
        expected_type: ModuleType::Real,
        expected_stationary_dim: 21,
        rep: Representation::defining(&build_spin9(tol)?, tol)?,
    });
    out.push(Table2Module {
        name: "g2 standard".into(),
        expected_type: ModuleType::Real,
        expected_stationary_dim: 8,
        rep: Representation::defining(build_g2(tol)?.algebra(), tol)?,
    });
    for n in 5..=6 {
        let g = std::sync::Arc::new(build_so(2 * n, tol)?);
        let su = unitary_part(&g, n, true, tol)?;
        let space = HomogeneousSpace::new(format!("so({})/su({n})", 2 * n), su, tol)
            .map_err(BuildError::from)?;
        out.push(Table2Module {
            name: format!("su({n}) s-module"),
            expected_type: ModuleType::Complex,
            expected_stationary_dim: 3 * (n / 2),
            rep: s_module(&space, n * (n - 1), tol)?,
        });
    }
    {
        let n = 3;
        let g = std::sync::Arc::new(build_su(2 * n, tol)?);
        let sp = symplectic_in_su(&g, 2 * n, n, tol)?;
        let space = HomogeneousSpace::new(format!("su({})/sp({n})", 2 * n), sp, tol)
            .map_err(BuildError::from)?;
        out.push(Table2Module {
            name: format!("sp({n}) s-module"),
            expected_type: ModuleType::Real,
            expected_stationary_dim: 3 * n,
            rep: s_module(&space, (n - 1) * (2 * n + 1), tol)?,
        });
    }
    Ok(out)
}

/// Minimum stabiliser dimension over `samples` random vectors, and the type.
pub fn check_table2(
    module: &Table2Module,
    samples: usize,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<Table2Result, CatalogError> {
    let mut rng = seeded_rng(seed);
    let measured = module.rep.generic_centralizer_dim(samples, &mut rng, tol);
    let measured_type = classify_type(&module.rep, tol)?;
    Ok(Table2Result {
        name: module.name.clone(),
        dim: module.rep.dim(),
        algebra_dim: module.rep.algebra_dim(),
        expected_type: module.expected_type,
        measured_type,
        expected_stationary_dim: module.expected_stationary_dim,
        measured_stationary_dim: measured,
        pass: measured == module.expected_stationary_dim && measured_type == module.expected_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn row6_condition_examples() {
        let t = tol();
        let r = Table1Row::Row6 { n: 3 };
        assert!(condition(r, &[1.0, 2.0, 1.5], &t).unwrap());
        assert!(!condition(r, &[1.0, 1.0, 2.0], &t).unwrap());
        assert!(!condition(r, &[2.0, 2.0, 2.0], &t).unwrap());
        assert!(expected_go(r, &[2.0, 2.0, 2.0], &t).unwrap());
        assert!(condition(r, &[1.0, 2.0], &t).is_err());
        assert!(!condition(Table1Row::Row9 { n: 2 }, &[1.0, 1.0, 1.0], &t).unwrap());
        assert!(condition(Table1Row::Row9 { n: 2 }, &[1.0, 1.0, 3.0], &t).unwrap());
    }

    #[test]
    fn reduced_coefficients_identity() {
        let r = ReducedCoefficients::new(1.0, 2.0, 1.5);
        assert!(r.identity_residual().abs() < 1e-15);
        assert!(r.row6_odd(3).abs() < 1e-15);
    }

    #[test]
    fn blueprint_dims_row8_and_row9() {
        let t = tol();
        let s = RowSetup::new(Table1Row::Row8 { n: 1 }, &t).unwrap();
        assert_eq!(s.blueprint.dims(), vec![4, 3]);
        let s = RowSetup::new(Table1Row::Row9 { n: 2 }, &t).unwrap();
        assert_eq!(s.blueprint.dims(), vec![8, 5, 1]);
    }

    #[test]
    fn row8_campaign_agrees() {
        let t = tol();
        let s = RowSetup::new(Table1Row::Row8 { n: 1 }, &t).unwrap();
        let c = verify_row(&s, 1, &CampaignConfig::default(), &t).unwrap();
        for i in &c.instances {
            assert!(i.agrees, "{i:?}");
        }
    }
}
