//! Naturally reductive metrics on `G/H` built from ideals of `g`.
//!
//! `g` splits into simple ideals `g_i`, ordered so that `h` projects
//! trivially to the first `N0`, injectively (not onto) to the next `N1 - N0`
//! and bijectively to the rest. Two constructions are offered:
//!
//! * ideal complement: `p` is the sum of all ideals but one bijective `g_j`,
//!   with inner product `Σ β_i <,>_i`;
//! * Q complement: `Q = Σ γ_i <,>_i` and `p` is the Q-orthogonal complement
//!   of `h`, with inner product `Q|_p`.
//!
//! Here `<,>_i` is minus the Killing form of `g_i` rescaled so that on the
//! projection of `h` it equals minus the Killing form of `h`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gocheck::{linear_graph_fit, GoError, MetricSpec};
use crate::liealg::HomogeneousSpace;
use crate::numerics::{
    cluster_sorted, kernel_basis, rank, seeded_rng, sym_eigen_unchecked, Matrix, NumericsError,
    TolerancePolicy,
};
use crate::repmod::Representation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NatRedError {
    #[error("g is not compact semisimple (smallest Killing eigenvalue {0:.3e})")]
    NotSemisimple(f64),
    #[error("ideal splitting failed: {0}")]
    Split(String),
    #[error("projection of h to ideal {ideal} is not a scalar multiple of the Killing form of h (residual {residual:.3e})")]
    Normalization { ideal: usize, residual: f64 },
    #[error("expected {expected} coefficients, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("coefficient {index} is {value}; must be nonzero and finite")]
    ZeroCoefficient { index: usize, value: f64 },
    #[error("coefficient {index} is {value}; must be positive")]
    NonPositive { index: usize, value: f64 },
    #[error("ideal {j} is not a bijective projection of h; case (a) needs one")]
    NotBijective { j: usize },
    #[error("rejected: {reason}")]
    Rejected {
        reason: String,
        min_gram_eigenvalue: f64,
        analytic_admissible: bool,
    },
    #[error("sign conditions say {analytic}, Gram eigenvalues say {numeric} (min eigenvalue {min_gram_eigenvalue:.3e})")]
    Disagreement {
        analytic: bool,
        numeric: bool,
        min_gram_eigenvalue: f64,
    },
    #[error(transparent)]
    Go(#[from] GoError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectionKind {
    Trivial,
    Injective,
    Bijective,
    /// Neither zero nor injective; only possible for non-simple `h`.
    Partial,
}

#[derive(Debug, Clone)]
pub struct Ideal {
    /// Orthonormal g-coordinate basis.
    pub basis: Matrix,
    pub kind: ProjectionKind,
    /// `<,>_i = scale · (minus Killing of g)` on this ideal.
    pub scale: f64,
}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

#[derive(Debug, Clone)]
pub struct IdealDecomposition {
    pub ideals: Vec<Ideal>,
    /// Number of ideals with trivial projection.
    pub n0: usize,
    /// `n0` plus the number with injective, non-surjective projection.
    pub n1: usize,
}

impl IdealDecomposition {
    pub fn n(&self) -> usize {
        self.ideals.len()
    }

    /// Indices (0-based) of ideals onto which `h` projects bijectively.
    pub fn bijective(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.ideals[i].kind == ProjectionKind::Bijective)
            .collect()
    }

    /// Largest `|[g_i, g_j]|` over basis pairs from distinct ideals.
    pub fn commutator_residual(&self, space: &HomogeneousSpace) -> f64 {
        let g = space.g();
        let mut worst: f64 = 0.0;
        for (i, a) in self.ideals.iter().enumerate() {
            for b in &self.ideals[i + 1..] {
                for x in a.basis.column_iter() {
                    let adx = g.ad(&x.into_owned());
                    worst = worst.max((adx * &b.basis).amax());
                }
            }
        }
        worst
    }

    /// `Σ c_i scale_i P_i P_iᵀ` in g-coordinates.
    pub fn form(&self, coeffs: &[f64]) -> Matrix {
        let d = self.ideals[0].basis.nrows();
        let mut q = Matrix::zeros(d, d);
        for (ideal, c) in self.ideals.iter().zip(coeffs) {
            q += &ideal.basis * ideal.basis.transpose() * (c * ideal.scale);
        }
        q
    }
}

/// Splits `g` into simple ideals using a random symmetric element of the
/// commutant of `ad(g)`, then classifies and normalises each ideal.
pub fn decompose_ideals(
    space: &HomogeneousSpace,
    tol: &TolerancePolicy,
) -> Result<IdealDecomposition, NatRedError> {
    let g = space.g();
    let kmin = sym_eigen_unchecked(g.killing_gram()).values[0];
    if kmin <= tol.feas_tol {
        return Err(NatRedError::NotSemisimple(kmin));
    }
    let adj = Representation::adjoint(g, tol).map_err(|e| NatRedError::Split(e.to_string()))?;
    let comm = adj.commutant(tol).symmetric;
    let d = g.dim();
    let mut rng = seeded_rng(0x1dea1);
    let mut s = Matrix::zeros(d, d);
    for c in &comm {
        s += c * rng.random_range(1.0..2.0);
    }
    let eig = sym_eigen_unchecked(&s);
    let scale = eig
        .values
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1.0);
    let blocks = cluster_sorted(&eig.values, 1e-6 * scale);
    if blocks.len() != comm.len() {
        return Err(NatRedError::Split(format!(
            "{} eigenvalue clusters for a {}-dimensional commutant",
            blocks.len(),
            comm.len()
        )));
    }
    let h = space.h().inclusion();
    let gh = space.h().algebra().killing_gram();
    let mut ideals = Vec::new();
    for r in blocks {
        let basis = eig.vectors.columns(r.start, r.len()).into_owned();
        let proj = basis.transpose() * h;
        let rk = rank(&proj, tol);
        let kind = if rk == 0 {
            ProjectionKind::Trivial
        } else if rk == h.ncols() && rk == basis.ncols() {
            ProjectionKind::Bijective
        } else if rk == h.ncols() {
            ProjectionKind::Injective
        } else {
            ProjectionKind::Partial
        };
        let scale = if rk == 0 {
            1.0
        } else {
            let gp = proj.transpose() * &proj;
            let c = gh.dot(&gp) / gp.dot(&gp);
            let residual = (gh - &gp * c).amax() / gh.amax().max(f64::MIN_POSITIVE);
            if kind == ProjectionKind::Partial || residual > 1e-6 {
                return Err(NatRedError::Normalization {
                    ideal: ideals.len(),
                    residual,
                });
            }
            c
        };
        ideals.push(Ideal { basis, kind, scale });
    }
    let support = |b: &Matrix| {
        (0..b.nrows())
            .find(|&r| b.row(r).amax() > 1e-6)
            .unwrap_or(usize::MAX)
    };
    let rank_of = |k: ProjectionKind| match k {
        ProjectionKind::Trivial => 0,
        ProjectionKind::Injective | ProjectionKind::Partial => 1,
        ProjectionKind::Bijective => 2,
    };
    ideals.sort_by_key(|i| (rank_of(i.kind), support(&i.basis)));
    let n0 = ideals
        .iter()
        .filter(|i| i.kind == ProjectionKind::Trivial)
        .count();
    let n1 = n0 + ideals.iter().filter(|i| rank_of(i.kind) == 1).count();
    Ok(IdealDecomposition { ideals, n0, n1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Construction {
    IdealComplement {
        j: usize,
    },
    QComplement,
    /// `p = m` with a given metric endomorphism; used for negative checks.
    Pullback,
}

/// A reductive complement `p` with an inner product.
#[derive(Debug, Clone)]
pub struct NatRedMetric {
    pub construction: Construction,
    pub coefficients: Vec<f64>,
    /// Orthonormal g-coordinate basis of `p`.
    pub p: Matrix,
    /// Inner product on `p` in the coordinates of `p`.
    pub gram: Matrix,
    /// The form `Q` on g and the subspace `q` where `Q|_p = (,)` holds.
    pub q_form: Matrix,
    pub q_space: Matrix,
}

/// Sign conditions for `Q = Σ γ_i <,>_i`: all positive, or exactly one
/// negative on a bijective ideal with the sum over nontrivial ideals negative.
pub fn analytic_admissible(decomp: &IdealDecomposition, gammas: &[f64]) -> bool {
    let neg: Vec<usize> = (0..gammas.len()).filter(|&i| gammas[i] < 0.0).collect();
    match neg.as_slice() {
        [] => true,
        [j] => {
            decomp.ideals[*j].kind == ProjectionKind::Bijective
                && gammas[decomp.n0..].iter().sum::<f64>() < 0.0
        }
        _ => false,
    }
}

fn check_arity(got: usize, expected: usize) -> Result<(), NatRedError> {
    if got != expected {
        return Err(NatRedError::Arity { expected, got });
    }
    Ok(())
}

/// Ideal-complement construction. `betas` lists coefficients for the ideals
/// other than `j`, in ideal order.
pub fn natred_case_a(
    decomp: &IdealDecomposition,
    j: usize,
    betas: &[f64],
    _tol: &TolerancePolicy,
) -> Result<NatRedMetric, NatRedError> {
    if j >= decomp.n() || decomp.ideals[j].kind != ProjectionKind::Bijective || decomp.n() < 2 {
        return Err(NatRedError::NotBijective { j });
    }
    check_arity(betas.len(), decomp.n() - 1)?;
    if let Some((index, &value)) = betas
        .iter()
        .enumerate()
        .find(|(_, b)| !(b.is_finite() && **b > 0.0))
    {
        return Err(NatRedError::NonPositive { index, value });
    }
    let mut coeffs = betas.to_vec();
    coeffs.insert(j, 0.0);
    let cols: Vec<_> = decomp
        .ideals
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .flat_map(|(_, id)| {
            id.basis
                .column_iter()
                .map(|c| c.into_owned())
                .collect::<Vec<_>>()
        })
        .collect();
    let p = Matrix::from_columns(&cols);
    let q = decomp.form(&coeffs);
    let gram = p.transpose() * &q * &p;
    Ok(NatRedMetric {
        construction: Construction::IdealComplement { j },
        coefficients: coeffs,
        q_space: p.clone(),
        p,
        gram,
        q_form: q,
    })
}

/// Q-complement construction. Accepts iff the Gram matrix of `Q|_p` is
/// positive definite; the sign conditions must agree.
pub fn natred_case_b(
    space: &HomogeneousSpace,
    decomp: &IdealDecomposition,
    gammas: &[f64],
    tol: &TolerancePolicy,
) -> Result<NatRedMetric, NatRedError> {
    check_arity(gammas.len(), decomp.n())?;
    if let Some((index, &value)) = gammas
        .iter()
        .enumerate()
        .find(|(_, g)| !(g.is_finite() && **g != 0.0))
    {
        return Err(NatRedError::ZeroCoefficient { index, value });
    }
    let analytic = analytic_admissible(decomp, gammas);
    let q = decomp.form(gammas);
    let h = space.h().inclusion();
    let scale = decomp
        .ideals
        .iter()
        .zip(gammas)
        .map(|(i, g)| (g * i.scale).abs())
        .fold(0.0, f64::max);
    let qhh = h.transpose() * &q * h;
    let qhh_min = sym_eigen_unchecked(&qhh)
        .values
        .iter()
        .fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let reject = |reason: String, min: f64| {
        if analytic {
            NatRedError::Disagreement {
                analytic,
                numeric: false,
                min_gram_eigenvalue: min,
            }
        } else {
            NatRedError::Rejected {
                reason,
                min_gram_eigenvalue: min,
                analytic_admissible: analytic,
            }
        }
    };
    if qhh_min <= tol.feas_tol * scale {
        return Err(reject(
            "Q is degenerate on h, so p is not a complement".into(),
            0.0,
        ));
    }
    let p = kernel_basis(&(h.transpose() * &q), tol);
    let gram = p.transpose() * &q * &p;
    let min = sym_eigen_unchecked(&gram)
        .values
        .first()
        .copied()
        .unwrap_or(f64::INFINITY);
    if min <= tol.feas_tol * scale {
        return Err(reject(
            format!("Q restricted to p has eigenvalue {min:.6e} <= 0"),
            min,
        ));
    }
    if !analytic {
        return Err(NatRedError::Disagreement {
            analytic,
            numeric: true,
            min_gram_eigenvalue: min,
        });
    }
    let d = space.dim_g();
    Ok(NatRedMetric {
        construction: Construction::QComplement,
        coefficients: gammas.to_vec(),
        p,
        gram,
        q_form: q,
        q_space: Matrix::identity(d, d),
    })
}

/// `p = m` with inner product `A`; this is naturally reductive only if `A`
/// is.
pub fn pullback(space: &HomogeneousSpace, a: &MetricSpec) -> NatRedMetric {
    let d = space.dim_g();
    let p = space.m().basis.clone();
    let q = &p * a.matrix() * p.transpose();
    NatRedMetric {
        construction: Construction::Pullback,
        coefficients: a.alphas(),
        gram: a.matrix().clone(),
        p,
        q_form: q,
        q_space: Matrix::identity(d, d),
    }
}

/// Checks `Q(p, q ∩ h) = 0` and `Q|_p = (,)` with the metric's own `Q`.
pub fn check_kostant(
    space: &HomogeneousSpace,
    metric: &NatRedMetric,
    tol: &TolerancePolicy,
) -> bool {
    check_kostant_with(space, metric, &metric.q_form, tol)
}

/// As [`check_kostant`] for an arbitrary symmetric form `q` on g.
pub fn check_kostant_with(
    space: &HomogeneousSpace,
    metric: &NatRedMetric,
    q: &Matrix,
    tol: &TolerancePolicy,
) -> bool {
    let h = space.h().inclusion();
    // q ∩ h: vectors of h lying in q_space.
    let qs = &metric.q_space;
    let d = space.dim_g();
    let off = (Matrix::identity(d, d) - qs * qs.transpose()) * h;
    let qh = h * kernel_basis(&off, tol);
    let scale = metric.gram.amax().max(q.amax());
    let cross = (metric.p.transpose() * q * &qh).amax();
    let on_p = (metric.p.transpose() * q * &metric.p - &metric.gram).amax();
    cross <= tol.feas_tol * scale && on_p <= tol.feas_tol * scale
}

/// Coordinates `(u, z)` with `w = P u + H z`.
fn split_p_h(space: &HomogeneousSpace, metric: &NatRedMetric) -> Matrix {
    let cols: Vec<_> = metric
        .p
        .column_iter()
        .chain(space.h().inclusion().column_iter())
        .map(|c| c.into_owned())
        .collect();
    let basis = Matrix::from_columns(&cols);
    basis
        .try_inverse()
        .unwrap_or_else(|| Matrix::zeros(cols.len(), cols.len()))
}

/// Largest `|([e_a, e_b]_p, e_c) + ([e_c, e_b]_p, e_a)|` over basis triples
/// of `p`, relative to the largest entry of the Gram matrix.
pub fn check_natred_identity(space: &HomogeneousSpace, metric: &NatRedMetric) -> f64 {
    let g = space.g();
    let dp = metric.p.ncols();
    let inv = split_p_h(space, metric);
    let to_p = inv.rows(0, dp).into_owned();
    // t[a][b] = (([e_a, e_b]_p, e_c))_c
    let mut t = vec![vec![crate::numerics::Vector::zeros(dp); dp]; dp];
    for a in 0..dp {
        let ada = g.ad(&metric.p.column(a).into_owned());
        let br = &to_p * (ada * &metric.p);
        for b in 0..dp {
            t[a][b] = &metric.gram * br.column(b);
        }
    }
    let mut worst: f64 = 0.0;
    for a in 0..dp {
        for b in 0..dp {
            for c in 0..dp {
                worst = worst.max((t[a][b][c] + t[c][b][a]).abs());
            }
        }
    }
    worst / metric.gram.amax().max(f64::MIN_POSITIVE)
}

/// The metric endomorphism on `m`: `A_ab = (π e_a, π e_b)` where `π` projects
/// along `h` onto `p`.
pub fn metric_operator(space: &HomogeneousSpace, metric: &NatRedMetric) -> Matrix {
    let dp = metric.p.ncols();
    let inv = split_p_h(space, metric);
    let u = inv.rows(0, dp) * &space.m().basis;
    u.transpose() * &metric.gram * u
}

pub fn to_metric_spec(
    space: &HomogeneousSpace,
    metric: &NatRedMetric,
    tol: &TolerancePolicy,
) -> Result<MetricSpec, NatRedError> {
    Ok(MetricSpec::from_operator(
        &metric_operator(space, metric),
        tol,
    )?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenvalueDoc {
    pub alpha: f64,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealDoc {
    pub dim: usize,
    pub projection: ProjectionKind,
    pub scale: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NatRedCertificate {
    pub accepted: bool,
    pub construction: Construction,
    pub coefficients: Vec<f64>,
    pub ideals: Vec<IdealDoc>,
    pub n0: usize,
    pub n1: usize,
    pub n: usize,
    pub analytic_admissible: Option<bool>,
    pub min_gram_eigenvalue: Option<f64>,
    pub kostant: Option<bool>,
    pub identity_residual: Option<f64>,
    pub metric: Vec<EigenvalueDoc>,
    pub linear_graph_accepted: Option<bool>,
    pub linear_graph_residual: Option<f64>,
    pub linear_graph_heldout: Option<f64>,
    pub reason: Option<String>,
}

pub enum NatRedRequest<'a> {
    CaseA { j: usize, betas: &'a [f64] },
    CaseB { gammas: &'a [f64] },
}

/// Runs a construction and every check on it. Rejections become a
/// certificate with `accepted = false`; other failures are errors.
pub fn certify(
    space: &HomogeneousSpace,
    decomp: &IdealDecomposition,
    request: NatRedRequest<'_>,
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<NatRedCertificate, NatRedError> {
    let (construction, coefficients, result) = match request {
        NatRedRequest::CaseA { j, betas } => (
            Construction::IdealComplement { j },
            betas.to_vec(),
            natred_case_a(decomp, j, betas, tol),
        ),
        NatRedRequest::CaseB { gammas } => (
            Construction::QComplement,
            gammas.to_vec(),
            natred_case_b(space, decomp, gammas, tol),
        ),
    };
    let analytic = match construction {
        Construction::QComplement => Some(analytic_admissible(decomp, &coefficients)),
        _ => None,
    };
    let mut cert = NatRedCertificate {
        accepted: false,
        construction,
        coefficients,
        ideals: decomp
            .ideals
            .iter()
            .map(|i| IdealDoc {
                dim: i.dim(),
                projection: i.kind,
                scale: i.scale,
            })
            .collect(),
        n0: decomp.n0,
        n1: decomp.n1,
        n: decomp.n(),
        analytic_admissible: analytic,
        min_gram_eigenvalue: None,
        kostant: None,
        identity_residual: None,
        metric: Vec::new(),
        linear_graph_accepted: None,
        linear_graph_residual: None,
        linear_graph_heldout: None,
        reason: None,
    };
    let metric = match result {
        Ok(m) => m,
        Err(NatRedError::Rejected {
            reason,
            min_gram_eigenvalue,
            ..
        }) => {
            cert.min_gram_eigenvalue = Some(min_gram_eigenvalue);
            cert.reason = Some(reason);
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    cert.min_gram_eigenvalue = sym_eigen_unchecked(&metric.gram).values.first().copied();
    let kostant = check_kostant(space, &metric, tol);
    let identity = check_natred_identity(space, &metric);
    let a = to_metric_spec(space, &metric, tol)?;
    let fit = linear_graph_fit(space, &a, seed, tol);
    cert.metric = a
        .eigenspaces()
        .iter()
        .map(|e| EigenvalueDoc {
            alpha: e.alpha,
            dim: e.dim(),
        })
        .collect();
    cert.kostant = Some(kostant);
    cert.identity_residual = Some(identity);
    cert.linear_graph_accepted = Some(fit.accepted);
    cert.linear_graph_residual = Some(fit.residual);
    cert.linear_graph_heldout = Some(fit.heldout_residual);
    cert.accepted = kostant && identity <= tol.feas_tol && fit.accepted;
    if !cert.accepted {
        cert.reason = Some("constructed metric failed a consistency check".into());
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_chain, SpaceId};

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
    fn ideals_of_ledger_obata_pair() {
        let sp = space("ledger-obata?k=2");
        let d = decompose_ideals(&sp, &tol()).unwrap();
        assert_eq!((d.n(), d.n0, d.n1), (2, 0, 0));
        assert!(d.ideals.iter().all(|i| i.kind == ProjectionKind::Bijective));
        // diag(x, x)/√2 projects to x/√2 and h has half the Killing form.
        for i in &d.ideals {
            assert!((i.scale - 1.0).abs() < 1e-10, "{}", i.scale);
        }
        assert!(d.commutator_residual(&sp) < 1e-12);
    }

    #[test]
    fn ideals_of_su2_su3() {
        let sp = space("su2+su3/su2");
        let d = decompose_ideals(&sp, &tol()).unwrap();
        assert_eq!((d.n(), d.n0, d.n1), (2, 1, 1));
        assert_eq!(d.ideals[0].dim(), 8);
        assert_eq!(d.ideals[1].kind, ProjectionKind::Bijective);
    }

    #[test]
    fn simple_g_has_one_ideal() {
        let sp = space("table1/row1");
        let d = decompose_ideals(&sp, &tol()).unwrap();
        assert_eq!((d.n(), d.n0, d.n1), (1, 0, 1));
        assert!(natred_case_a(&d, 0, &[], &tol()).is_err());
    }

    #[test]
    fn negative_gamma_gives_scalar_four() {
        let t = tol();
        let sp = space("ledger-obata?k=2");
        let d = decompose_ideals(&sp, &t).unwrap();
        let m = natred_case_b(&sp, &d, &[1.0, -2.0], &t).unwrap();
        assert!(check_kostant(&sp, &m, &t));
        assert!(check_natred_identity(&sp, &m) < 1e-10);
        let a = to_metric_spec(&sp, &m, &t).unwrap();
        // 2 γ1 γ2 / (γ1 + γ2) = 4.
        assert!(a.is_normal());
        assert!((a.alphas()[0] - 4.0).abs() < 1e-10);
        // Minus the Killing form of g is the identity in these coordinates.
        assert!(!check_kostant_with(&sp, &m, &Matrix::identity(6, 6), &t));
    }

    #[test]
    fn rejects_inadmissible_gamma() {
        let t = tol();
        let sp = space("ledger-obata?k=2");
        let d = decompose_ideals(&sp, &t).unwrap();
        let r = natred_case_b(&sp, &d, &[1.0, -0.5], &t);
        assert!(
            matches!(r, Err(NatRedError::Rejected { min_gram_eigenvalue, .. }) if min_gram_eigenvalue < 0.0)
        );
        assert!(matches!(
            natred_case_b(&sp, &d, &[1.0, 0.0], &t),
            Err(NatRedError::ZeroCoefficient { .. })
        ));
    }

    #[test]
    fn case_a_on_three_copies() {
        let t = tol();
        let sp = space("ledger-obata?k=3");
        let d = decompose_ideals(&sp, &t).unwrap();
        let m = natred_case_a(&d, 2, &[1.0, 2.0], &t).unwrap();
        assert!(check_kostant(&sp, &m, &t));
        assert!(check_natred_identity(&sp, &m) < 1e-10);
        assert!(natred_case_a(&d, 2, &[1.0, -2.0], &t).is_err());
        let cert = certify(
            &sp,
            &d,
            NatRedRequest::CaseA {
                j: 2,
                betas: &[1.0, 2.0],
            },
            0,
            &t,
        )
        .unwrap();
        assert!(cert.accepted, "{cert:?}");
        assert_eq!(cert.metric.len(), 2);
    }
}
