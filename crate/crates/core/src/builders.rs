//! Concrete compact algebras and the embedding chains `H ⊂ … ⊂ G` used by
//! the catalog.
//!
//! Complex and quaternionic algebras are realified once, here: a complex
//! `n×n` matrix `A + iB` becomes the real `2n×2n` matrix `[[A, -B], [B, A]]`,
//! and `sp(n)` is cut out of realified `su(2n)` by the quaternionic structure.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::{HomogeneousSpace, LieAlgebra, LieError, Subalgebra};
use crate::numerics::{kernel_basis, Matrix, TolerancePolicy, Vector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("{family}({n}) is outside the supported range {range}")]
    OutOfRange {
        family: &'static str,
        n: usize,
        range: &'static str,
    },
    #[error("construction bug in {what}: {detail}")]
    Construction { what: String, detail: String },
    #[error("unknown space id '{0}'")]
    UnknownSpace(String),
    #[error("invalid parameters for '{id}': {detail}")]
    BadParams { id: String, detail: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn unit_matrix(n: usize, r: usize, c: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(r, c)] = 1.0;
    m
}

/// Realification of the complex matrix `re + i im`.
pub fn realify(re: &Matrix, im: &Matrix) -> Matrix {
    let n = re.nrows();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(re);
    m.view_mut((n, n), (n, n)).copy_from(re);
    m.view_mut((0, n), (n, n)).copy_from(&(-im));
    m.view_mut((n, 0), (n, n)).copy_from(im);
    m
}

/// Realified multiplication by `i` on `C^n`.
pub fn complex_structure(n: usize) -> Matrix {
    realify(&Matrix::zeros(n, n), &Matrix::identity(n, n))
}

fn finish(
    name: String,
    basis: Vec<Matrix>,
    tol: &TolerancePolicy,
) -> Result<LieAlgebra, BuildError> {
    Ok(LieAlgebra::from_basis(name, basis, tol)?.normalized(tol)?)
}

pub fn build_so(n: usize, tol: &TolerancePolicy) -> Result<LieAlgebra, BuildError> {
    if !(3..=12).contains(&n) {
        return Err(BuildError::OutOfRange {
            family: "so",
            n,
            range: "3..=12",
        });
    }
    let mut basis = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(unit_matrix(n, j, i) - unit_matrix(n, i, j));
        }
    }
    finish(format!("so({n})"), basis, tol)
}

fn su_basis(n: usize) -> Vec<Matrix> {
    let zero = Matrix::zeros(n, n);
    let mut basis = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            basis.push(realify(
                &(unit_matrix(n, j, k) - unit_matrix(n, k, j)),
                &zero,
            ));
            basis.push(realify(
                &zero,
                &(unit_matrix(n, j, k) + unit_matrix(n, k, j)),
            ));
        }
    }
    for j in 0..n.saturating_sub(1) {
        basis.push(realify(
            &zero,
            &(unit_matrix(n, j, j) - unit_matrix(n, j + 1, j + 1)),
        ));
    }
    basis
}

pub fn build_su(n: usize, tol: &TolerancePolicy) -> Result<LieAlgebra, BuildError> {
    if !(2..=7).contains(&n) {
        return Err(BuildError::OutOfRange {
            family: "su",
            n,
            range: "2..=7",
        });
    }
    finish(format!("su({n})"), su_basis(n), tol)
}

/// `u(n)`, realified. Not semisimple, so the basis is left unnormalised.
pub fn build_u(n: usize, tol: &TolerancePolicy) -> Result<LieAlgebra, BuildError> {
    if !(1..=7).contains(&n) {
        return Err(BuildError::OutOfRange {
            family: "u",
            n,
            range: "1..=7",
        });
    }
    let mut basis = su_basis(n);
    basis.push(complex_structure(n));
    Ok(LieAlgebra::from_basis(format!("u({n})"), basis, tol)?)
}

/// The complex symplectic form `[[0, I], [-I, 0]]` on `C^{2n}`, realified.
fn symplectic_form(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    realify(&j, &Matrix::zeros(2 * n, 2 * n))
}

/// Realified complex conjugation acting by conjugation: `conj(X) = K X K`.
fn conjugation_sign(n: usize) -> Matrix {
    let mut k = Matrix::identity(2 * n, 2 * n);
    for i in n..2 * n {
        k[(i, i)] = -1.0;
    }
    k
}

/// Linear constraint `J X - conj(X) J` for a realified complex matrix, i.e.
/// `X^T J + J X = 0` for skew-Hermitian `X`.
fn quaternionic_constraint(j: &Matrix, k: &Matrix, x: &Matrix) -> Vec<f64> {
    let c = j * x - k * x * k * j;
    c.iter().copied().collect()
}

pub fn build_sp(n: usize, tol: &TolerancePolicy) -> Result<LieAlgebra, BuildError> {
    if !(1..=3).contains(&n) {
        return Err(BuildError::OutOfRange {
            family: "sp",
            n,
            range: "1..=3",
        });
    }
    let su = Arc::new(build_su(2 * n, tol)?);
    let j = symplectic_form(n);
    let k = conjugation_sign(2 * n);
    let sub = Subalgebra::from_constraints(
        su,
        format!("sp({n})"),
        |x| quaternionic_constraint(&j, &k, x),
        tol,
    )?;
    let expected = n * (2 * n + 1);
    if sub.dim() != expected {
        return Err(BuildError::Construction {
            what: format!("sp({n})"),
            detail: format!("dimension {} != {expected}", sub.dim()),
        });
    }
    finish(format!("sp({n})"), sub.algebra().basis().to_vec(), tol)
}

/// Octonion multiplication in the basis `{1, e1, …, e7}` with the cyclic
/// triples `e_i e_{i+1} = e_{i+3}` (indices mod 7).
#[derive(Debug, Clone)]
pub struct OctonionTable {
    /// `table[a][b] = (sign, c)` with `x_a x_b = sign * x_c`.
    table: [[(f64, usize); 8]; 8],
}

pub const FANO_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 4),
    (2, 3, 5),
    (3, 4, 6),
    (4, 5, 7),
    (5, 6, 1),
    (6, 7, 2),
    (7, 1, 3),
];

impl Default for OctonionTable {
    fn default() -> Self {
        Self::new()
    }
}

impl OctonionTable {
    pub fn new() -> Self {
        let mut table = [[(0.0, 0); 8]; 8];
        for (a, row) in table.iter_mut().enumerate() {
            row[0] = (1.0, a);
        }
        for b in 0..8 {
            table[0][b] = (1.0, b);
        }
        for i in 1..8 {
            table[i][i] = (-1.0, 0);
        }
        for &(i, j, k) in &FANO_TRIPLES {
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                table[a][b] = (1.0, c);
                table[b][a] = (-1.0, c);
            }
        }
        Self { table }
    }

    pub fn basis_product(&self, a: usize, b: usize) -> (f64, usize) {
        self.table[a][b]
    }

    pub fn mul(&self, x: &[f64; 8], y: &[f64; 8]) -> [f64; 8] {
        let mut out = [0.0; 8];
        for a in 0..8 {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..8 {
                let (s, c) = self.table[a][b];
                out[c] += s * x[a] * y[b];
            }
        }
        out
    }

    /// Matrix of left multiplication by the basis element `x_a`.
    pub fn left_mult(&self, a: usize) -> Matrix {
        let mut m = Matrix::zeros(8, 8);
        for b in 0..8 {
            let (s, c) = self.table[a][b];
            m[(c, b)] = s;
        }
        m
    }

    /// Seven anticommuting 8×8 matrices squaring to `-I`.
    pub fn gammas(&self) -> Vec<Matrix> {
        (1..8).map(|i| self.left_mult(i)).collect()
    }
}

/// Largest violation of `Γ_i Γ_j + Γ_j Γ_i = -2 δ_ij I`.
pub fn clifford_residual(gammas: &[Matrix], sign: f64) -> f64 {
    let n = gammas[0].nrows();
    let mut worst: f64 = 0.0;
    for (i, a) in gammas.iter().enumerate() {
        for (j, b) in gammas.iter().enumerate() {
            let target = if i == j {
                Matrix::identity(n, n) * (2.0 * sign)
            } else {
                Matrix::zeros(n, n)
            };
            worst = worst.max((a * b + b * a - target).amax());
        }
    }
    worst
}

fn embed_top_left(m: &Matrix, n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    out.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    out
}

fn spin_products(gammas: &[Matrix]) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..gammas.len() {
        for j in (i + 1)..gammas.len() {
            out.push(&gammas[i] * &gammas[j]);
        }
    }
    out
}

/// `spin(7) ⊂ so(8)` spanned by the products `Γ_i Γ_j` of octonion left
/// multiplications.
pub fn build_spin7_in_so8(tol: &TolerancePolicy) -> Result<Subalgebra, BuildError> {
    let so8 = Arc::new(build_so(8, tol)?);
    spin7_inside(so8, tol)
}

fn spin7_inside(g: Arc<LieAlgebra>, tol: &TolerancePolicy) -> Result<Subalgebra, BuildError> {
    let oct = OctonionTable::new();
    let gammas = oct.gammas();
    let res = clifford_residual(&gammas, -1.0);
    if res > tol.feas_tol {
        return Err(BuildError::Construction {
            what: "spin(7) gammas".into(),
            detail: format!("anticommutation residual {res:.3e}"),
        });
    }
    let n = g.ambient_dim();
    let mats: Vec<Matrix> = spin_products(&gammas)
        .iter()
        .map(|m| embed_top_left(m, n))
        .collect();
    let sub = Subalgebra::from_matrices(g, "spin(7)", &mats, tol)?;
    expect_dim(&sub, 21)?;
    Ok(sub)
}

fn expect_dim(sub: &Subalgebra, expected: usize) -> Result<(), BuildError> {
    if sub.dim() == expected {
        Ok(())
    } else {
        Err(BuildError::Construction {
            what: sub.name().to_string(),
            detail: format!("dimension {} != {expected}", sub.dim()),
        })
    }
}

/// Solves `D(xy) = D(x)y + xD(y)` for operators on the imaginary octonions.
/// Returns the 7×7 solution matrices (dimension 14).
pub fn g2_derivations(tol: &TolerancePolicy) -> Result<Vec<Matrix>, BuildError> {
    let oct = OctonionTable::new();
    // Unknown D[r][c] acting on e_1..e_7 (indices 1..=7 ↦ 0..7), D(1) = 0.
    let idx = |r: usize, c: usize| r * 7 + c;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for a in 1..8 {
        for b in 1..8 {
            // Each output component q in 0..8 gives one equation.
            let mut eq = vec![vec![0.0; 49]; 8];
            // D(e_a e_b): e_a e_b = s e_c; D(e_c) = sum_r D[r][c] e_r (c ≥ 1).
            let (s, c) = oct.basis_product(a, b);
            if c >= 1 {
                for r in 1..8 {
                    eq[r][idx(r - 1, c - 1)] += s;
                }
            }
            // - D(e_a) e_b = - sum_r D[r][a] e_r e_b
            for r in 1..8 {
                let (s2, q) = oct.basis_product(r, b);
                eq[q][idx(r - 1, a - 1)] -= s2;
            }
            // - e_a D(e_b) = - sum_r D[r][b] e_a e_r
            for r in 1..8 {
                let (s3, q) = oct.basis_product(a, r);
                eq[q][idx(r - 1, b - 1)] -= s3;
            }
            rows.extend(eq);
        }
    }
    let system = Matrix::from_fn(rows.len(), 49, |r, c| rows[r][c]);
    let k = kernel_basis(&system, tol);
    if k.ncols() != 14 {
        return Err(BuildError::Construction {
            what: "g2".into(),
            detail: format!("derivation space has dimension {} != 14", k.ncols()),
        });
    }
    Ok((0..14)
        .map(|c| Matrix::from_fn(7, 7, |r, q| k[(idx(r, q), c)]))
        .collect())
}

/// `g2 ⊂ so(7)` as the derivation algebra of the octonions.
pub fn build_g2(tol: &TolerancePolicy) -> Result<Subalgebra, BuildError> {
    let so7 = Arc::new(build_so(7, tol)?);
    let sub = Subalgebra::from_matrices(so7, "g2", &g2_derivations(tol)?, tol)?;
    expect_dim(&sub, 14)?;
    Ok(sub)
}

/// Nine anticommuting symmetric 16×16 involutions built from the octonion
/// gammas by doubling; their products span `spin(9) ⊂ so(16)`.
pub fn spin9_gammas() -> Vec<Matrix> {
    let oct = OctonionTable::new();
    let mut out = Vec::new();
    let i8 = Matrix::identity(8, 8);
    let block = |tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix| {
        let mut m = Matrix::zeros(16, 16);
        m.view_mut((0, 0), (8, 8)).copy_from(tl);
        m.view_mut((0, 8), (8, 8)).copy_from(tr);
        m.view_mut((8, 0), (8, 8)).copy_from(bl);
        m.view_mut((8, 8), (8, 8)).copy_from(br);
        m
    };
    let z = Matrix::zeros(8, 8);
    for g in oct.gammas() {
        out.push(block(&z, &g, &(-&g), &z));
    }
    out.push(block(&z, &i8, &i8, &z));
    out.push(block(&i8, &z, &z, &(-&i8)));
    out
}

/// `spin(9)` realised on its 16-dimensional spin module.
pub fn build_spin9(tol: &TolerancePolicy) -> Result<LieAlgebra, BuildError> {
    let gammas = spin9_gammas();
    let res = clifford_residual(&gammas, 1.0);
    if res > tol.feas_tol {
        return Err(BuildError::Construction {
            what: "spin(9) gammas".into(),
            detail: format!("anticommutation residual {res:.3e}"),
        });
    }
    let alg = finish("spin(9)".into(), spin_products(&gammas), tol)?;
    if alg.dim() != 36 {
        return Err(BuildError::Construction {
            what: "spin(9)".into(),
            detail: format!("dimension {} != 36", alg.dim()),
        });
    }
    Ok(alg)
}

/// Complex index of a row/column of a realified matrix of complex size `n`.
fn complex_index(r: usize, n: usize) -> usize {
    r % n
}

/// Entries of a realified matrix (complex size `n`) whose complex row/column
/// indices fall in `forbidden`.
fn complex_entries(x: &Matrix, n: usize, forbidden: impl Fn(usize, usize) -> bool) -> Vec<f64> {
    let mut out = Vec::new();
    for r in 0..x.nrows() {
        for c in 0..x.ncols() {
            if forbidden(complex_index(r, n), complex_index(c, n)) {
                out.push(x[(r, c)]);
            }
        }
    }
    out
}

/// Real entries outside the top-left `k×k` block.
fn outside_block(x: &Matrix, k: usize) -> Vec<f64> {
    let mut out = Vec::new();
    for r in 0..x.nrows() {
        for c in 0..x.ncols() {
            if r >= k || c >= k {
                out.push(x[(r, c)]);
            }
        }
    }
    out
}

/// `so(k) ⊂ so(n)` as the top-left block.
pub fn block_so(
    g: &Arc<LieAlgebra>,
    k: usize,
    tol: &TolerancePolicy,
) -> Result<Subalgebra, BuildError> {
    let sub =
        Subalgebra::from_constraints(g.clone(), format!("so({k})"), |x| outside_block(x, k), tol)?;
    expect_dim(&sub, k * (k - 1) / 2)?;
    Ok(sub)
}

/// `su(k) ⊂ su(n)` as the top-left block (complex indices).
pub fn block_su(
    g: &Arc<LieAlgebra>,
    n: usize,
    k: usize,
    tol: &TolerancePolicy,
) -> Result<Subalgebra, BuildError> {
    let sub = Subalgebra::from_constraints(
        g.clone(),
        format!("su({k})"),
        |x| complex_entries(x, n, |r, c| r >= k || c >= k),
        tol,
    )?;
    expect_dim(&sub, k * k - 1)?;
    Ok(sub)
}

/// `sp(k) ⊂ sp(n)`: complex indices `{0..k} ∪ {n..n+k}` of `C^{2n}`.
pub fn block_sp(
    g: &Arc<LieAlgebra>,
    n: usize,
    k: usize,
    tol: &TolerancePolicy,
) -> Result<Subalgebra, BuildError> {
    let inside = move |i: usize| i < k || (n..n + k).contains(&i);
    let sub = Subalgebra::from_constraints(
        g.clone(),
        format!("sp({k})"),
        |x| complex_entries(x, 2 * n, |r, c| !(inside(r) && inside(c))),
        tol,
    )?;
    expect_dim(&sub, k * (2 * k + 1))?;
    Ok(sub)
}

/// Elements of `g` (realified, acting on `R^{2n}` in the top-left corner of
/// the ambient matrices) commuting with the complex structure, i.e. `u(n)`,
/// or `su(n)` when `traceless`.
pub fn unitary_part(
    g: &Arc<LieAlgebra>,
    n: usize,
    traceless: bool,
    tol: &TolerancePolicy,
) -> Result<Subalgebra, BuildError> {
    let amb = g.ambient_dim();
    let j = embed_top_left(&complex_structure(n), amb);
    let name = if traceless {
        format!("su({n})")
    } else {
        format!("u({n})")
    };
    let sub = Subalgebra::from_constraints(
        g.clone(),
        name,
        |x| {
            let mut v = outside_block(x, 2 * n);
            v.extend((&j * x - x * &j).iter().copied());
            if traceless {
                v.push((&j * x).trace());
            }
            v
        },
        tol,
    )?;
    expect_dim(&sub, if traceless { n * n - 1 } else { n * n })?;
    Ok(sub)
}

/// `sp(n) ⊂ su(2n) ⊂ su(total)`, acting on the first `2n` complex
/// coordinates and preserving the quaternionic structure there.
pub fn symplectic_in_su(
    g: &Arc<LieAlgebra>,
    total: usize,
    n: usize,
    tol: &TolerancePolicy,
) -> Result<Subalgebra, BuildError> {
    let j = embed_complex_top_left(&symplectic_form(n), total);
    let k = conjugation_sign(total);
    let sp = Subalgebra::from_constraints(
        g.clone(),
        format!("sp({n})"),
        |x| {
            let mut v = complex_entries(x, total, |r, c| r >= 2 * n || c >= 2 * n);
            v.extend(quaternionic_constraint(&j, &k, x));
            v
        },
        tol,
    )?;
    expect_dim(&sp, n * (2 * n + 1))?;
    Ok(sp)
}

/// The diagonal copy of a simple algebra inside `copies` block copies of it.
pub fn diagonal_subalgebra(
    g: &Arc<LieAlgebra>,
    copies: usize,
    tol: &TolerancePolicy,
) -> Result<Subalgebra, BuildError> {
    let d = g.dim();
    if copies == 0 || !d.is_multiple_of(copies) {
        return Err(BuildError::Construction {
            what: "diagonal subalgebra".into(),
            detail: format!("{d} not divisible by {copies}"),
        });
    }
    let k = d / copies;
    let span = Matrix::from_fn(d, k, |r, c| if r % k == c { 1.0 } else { 0.0 });
    Ok(Subalgebra::from_span(g.clone(), "diag", &span, tol)?)
}

/// Identifier of an in-scope Table 1 row with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Table1Row {
    /// SO(9)/Spin(7)
    Row1,
    /// SO(10)/Spin(7)
    Row2,
    /// SO(11)/Spin(7)
    Row3,
    /// SU(n+p)/SU(n)
    Row5 { n: usize, p: usize },
    /// SO(2n+1)/SU(n); odd n is case 6₁, even n is 6₂.
    Row6 { n: usize },
    /// SO(4n+2)/SU(2n+1)
    Row7 { n: usize },
    /// Sp(n+1)/Sp(n)
    Row8 { n: usize },
    /// SU(2n+1)/Sp(n)
    Row9 { n: usize },
    /// Spin(8)/G2
    Row10,
    /// SO(9)/G2
    Row11,
}

impl Table1Row {
    pub fn validate(&self) -> Result<(), BuildError> {
        let bad = |detail: &str| {
            Err(BuildError::BadParams {
                id: self.to_string(),
                detail: detail.to_string(),
            })
        };
        match *self {
            Table1Row::Row5 { n, p } if ![(2, 1), (3, 2), (4, 3)].contains(&(n, p)) => {
                bad("(n, p) must be one of (2,1), (3,2), (4,3)")
            }
            Table1Row::Row6 { n } if !(3..=5).contains(&n) => bad("n must be 3, 4 or 5"),
            Table1Row::Row7 { n } if n != 2 => bad("n must be 2"),
            Table1Row::Row8 { n } if !(1..=2).contains(&n) => bad("n must be 1 or 2"),
            Table1Row::Row9 { n } if n != 2 => bad("n must be 2"),
            _ => Ok(()),
        }
    }

    /// All in-scope rows at every supported parameter.
    pub fn all() -> Vec<Table1Row> {
        use Table1Row::*;
        vec![
            Row1,
            Row2,
            Row3,
            Row5 { n: 2, p: 1 },
            Row5 { n: 3, p: 2 },
            Row5 { n: 4, p: 3 },
            Row6 { n: 3 },
            Row6 { n: 4 },
            Row6 { n: 5 },
            Row7 { n: 2 },
            Row8 { n: 1 },
            Row8 { n: 2 },
            Row9 { n: 2 },
            Row10,
            Row11,
        ]
    }

    /// Each row once, at its smallest parameter.
    pub fn smallest() -> Vec<Table1Row> {
        use Table1Row::*;
        vec![
            Row1,
            Row2,
            Row3,
            Row5 { n: 3, p: 2 },
            Row6 { n: 3 },
            Row6 { n: 4 },
            Row7 { n: 2 },
            Row8 { n: 1 },
            Row9 { n: 2 },
            Row10,
            Row11,
        ]
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table1Row::Row1 => write!(f, "table1/row1"),
            Table1Row::Row2 => write!(f, "table1/row2"),
            Table1Row::Row3 => write!(f, "table1/row3"),
            Table1Row::Row5 { n, p } => write!(f, "table1/row5?n={n}&p={p}"),
            Table1Row::Row6 { n } => write!(f, "table1/row6?n={n}"),
            Table1Row::Row7 { n } => write!(f, "table1/row7?n={n}"),
            Table1Row::Row8 { n } => write!(f, "table1/row8?n={n}"),
            Table1Row::Row9 { n } => write!(f, "table1/row9?n={n}"),
            Table1Row::Row10 => write!(f, "table1/row10"),
            Table1Row::Row11 => write!(f, "table1/row11"),
        }
    }
}

/// Every space the tool can build, addressed by a stable string id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceId {
    Table1(Table1Row),
    /// `k` copies of su(2) over the diagonal (a Ledger–Obata space).
    LedgerObata {
        k: usize,
    },
    /// su(2) ⊕ su(3) over su(2) in the first factor.
    Su2PlusSu3,
    /// Top-left block `so(k) ⊂ so(n)`.
    BlockSo {
        n: usize,
        k: usize,
    },
    /// Top-left block `su(k) ⊂ su(n)`.
    BlockSu {
        n: usize,
        k: usize,
    },
    /// `sp(k) ⊂ sp(n)`.
    BlockSp {
        n: usize,
        k: usize,
    },
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::Table1(r) => write!(f, "{r}"),
            SpaceId::LedgerObata { k } => write!(f, "ledger-obata?k={k}"),
            SpaceId::Su2PlusSu3 => write!(f, "su2+su3/su2"),
            SpaceId::BlockSo { n, k } => write!(f, "block/so?n={n}&k={k}"),
            SpaceId::BlockSu { n, k } => write!(f, "block/su?n={n}&k={k}"),
            SpaceId::BlockSp { n, k } => write!(f, "block/sp?n={n}&k={k}"),
        }
    }
}

fn parse_params(id: &str, query: Option<&str>) -> Result<Vec<(String, usize)>, BuildError> {
    let Some(q) = query else { return Ok(vec![]) };
    q.split('&')
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| BuildError::BadParams {
                id: id.to_string(),
                detail: format!("malformed parameter '{kv}'"),
            })?;
            let v = v.parse::<usize>().map_err(|_| BuildError::BadParams {
                id: id.to_string(),
                detail: format!("parameter '{k}' is not a non-negative integer"),
            })?;
            Ok((k.to_string(), v))
        })
        .collect()
}

impl FromStr for SpaceId {
    type Err = BuildError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (path, query) = match s.split_once('?') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let params = parse_params(s, query)?;
        let get = |name: &str| -> Result<usize, BuildError> {
            params
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| *v)
                .ok_or_else(|| BuildError::BadParams {
                    id: s.to_string(),
                    detail: format!("missing parameter '{name}'"),
                })
        };
        let allowed: &[&str] = match path {
            "table1/row5" | "block/so" | "block/su" | "block/sp" => &["n", "p", "k"],
            "table1/row6" | "table1/row7" | "table1/row8" | "table1/row9" => &["n"],
            "ledger-obata" => &["k"],
            _ => &[],
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(BuildError::BadParams {
                id: s.to_string(),
                detail: format!("unexpected parameter '{k}'"),
            });
        }
        let id = match path {
            "table1/row1" => SpaceId::Table1(Table1Row::Row1),
            "table1/row2" => SpaceId::Table1(Table1Row::Row2),
            "table1/row3" => SpaceId::Table1(Table1Row::Row3),
            "table1/row5" => SpaceId::Table1(Table1Row::Row5 {
                n: get("n")?,
                p: get("p")?,
            }),
            "table1/row6" => SpaceId::Table1(Table1Row::Row6 { n: get("n")? }),
            "table1/row7" => SpaceId::Table1(Table1Row::Row7 { n: get("n")? }),
            "table1/row8" => SpaceId::Table1(Table1Row::Row8 { n: get("n")? }),
            "table1/row9" => SpaceId::Table1(Table1Row::Row9 { n: get("n")? }),
            "table1/row10" => SpaceId::Table1(Table1Row::Row10),
            "table1/row11" => SpaceId::Table1(Table1Row::Row11),
            "ledger-obata" => SpaceId::LedgerObata { k: get("k")? },
            "su2+su3/su2" => SpaceId::Su2PlusSu3,
            "block/so" => SpaceId::BlockSo {
                n: get("n")?,
                k: get("k")?,
            },
            "block/su" => SpaceId::BlockSu {
                n: get("n")?,
                k: get("k")?,
            },
            "block/sp" => SpaceId::BlockSp {
                n: get("n")?,
                k: get("k")?,
            },
            _ => return Err(BuildError::UnknownSpace(s.to_string())),
        };
        id.validate()?;
        Ok(id)
    }
}

impl SpaceId {
    pub fn validate(&self) -> Result<(), BuildError> {
        let bad = |detail: &str| {
            Err(BuildError::BadParams {
                id: self.to_string(),
                detail: detail.to_string(),
            })
        };
        match *self {
            SpaceId::Table1(r) => r.validate(),
            SpaceId::LedgerObata { k } if !(2..=4).contains(&k) => bad("k must be 2, 3 or 4"),
            SpaceId::BlockSo { n, k } if !(3..=12).contains(&n) || k < 3 || k >= n => {
                bad("need 3 <= k < n <= 12")
            }
            SpaceId::BlockSu { n, k } if !(2..=7).contains(&n) || k < 2 || k >= n => {
                bad("need 2 <= k < n <= 7")
            }
            SpaceId::BlockSp { n, k } if !(1..=3).contains(&n) || k < 1 || k >= n => {
                bad("need 1 <= k < n <= 3")
            }
            _ => Ok(()),
        }
    }

    /// A representative list for `list-spaces`.
    pub fn catalog() -> Vec<SpaceId> {
        let mut out: Vec<SpaceId> = Table1Row::all().into_iter().map(SpaceId::Table1).collect();
        out.extend([
            SpaceId::LedgerObata { k: 2 },
            SpaceId::LedgerObata { k: 3 },
            SpaceId::Su2PlusSu3,
        ]);
        out
    }
}

/// Nested subalgebras `h = g_0 ⊂ g_1 ⊂ … ⊂ g_k = g`, each stored as a
/// subalgebra of the top algebra.
#[derive(Debug, Clone)]
pub struct EmbeddingChain {
    pub id: String,
    pub levels: Vec<Subalgebra>,
}

impl EmbeddingChain {
    fn new(
        id: String,
        mut levels: Vec<Subalgebra>,
        tol: &TolerancePolicy,
    ) -> Result<Self, BuildError> {
        let top =
            levels
                .last()
                .map(|l| l.parent().clone())
                .ok_or_else(|| BuildError::Construction {
                    what: id.clone(),
                    detail: "empty chain".into(),
                })?;
        let d = top.dim();
        let full = Subalgebra::from_span(
            top.clone(),
            top.name().to_string(),
            &Matrix::identity(d, d),
            tol,
        )?;
        levels.push(full);
        let chain = Self { id, levels };
        chain.verify(tol)?;
        Ok(chain)
    }

    pub fn top(&self) -> &Arc<LieAlgebra> {
        self.levels[0].parent()
    }

    pub fn isotropy(&self) -> &Subalgebra {
        &self.levels[0]
    }

    pub fn level(&self, name: &str) -> Option<&Subalgebra> {
        self.levels.iter().find(|l| l.name() == name)
    }

    /// Inclusion of level `i` into level `i + 1`, in their own coordinates.
    pub fn step_inclusion(&self, i: usize) -> Matrix {
        self.levels[i + 1].inclusion().transpose() * self.levels[i].inclusion()
    }

    /// Checks each level is a subalgebra contained in the next one and that
    /// the step inclusions compose to the direct inclusion.
    pub fn verify(&self, tol: &TolerancePolicy) -> Result<(), BuildError> {
        for (i, lvl) in self.levels.iter().enumerate() {
            let r = lvl.homomorphism_residual();
            if r > tol.feas_tol {
                return Err(BuildError::Construction {
                    what: format!("{} level {}", self.id, lvl.name()),
                    detail: format!("bracket homomorphism residual {r:.3e}"),
                });
            }
            if i + 1 < self.levels.len() {
                let next = &self.levels[i + 1];
                let step = self.step_inclusion(i);
                let recon = next.inclusion() * &step;
                let err = (recon - lvl.inclusion()).amax();
                if err > tol.feas_tol {
                    return Err(BuildError::Construction {
                        what: format!("{} levels {} ⊂ {}", self.id, lvl.name(), next.name()),
                        detail: format!("not contained (residual {err:.3e})"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn space(&self, tol: &TolerancePolicy) -> Result<HomogeneousSpace, BuildError> {
        let name = format!("{}/{}", self.top().name(), self.isotropy().name());
        Ok(HomogeneousSpace::new(name, self.isotropy().clone(), tol)?)
    }
}

pub fn build_chain(id: SpaceId, tol: &TolerancePolicy) -> Result<EmbeddingChain, BuildError> {
    id.validate()?;
    let name = id.to_string();
    let levels = match id {
        SpaceId::Table1(row) => table1_levels(row, tol)?,
        SpaceId::LedgerObata { k } => {
            let su2 = build_su(2, tol)?;
            let parts: Vec<&LieAlgebra> = std::iter::repeat_n(&su2, k).collect();
            let g = Arc::new(LieAlgebra::direct_sum(format!("{k}su(2)"), &parts, tol)?);
            vec![diagonal_subalgebra(&g, k, tol)?]
        }
        SpaceId::Su2PlusSu3 => {
            let su2 = build_su(2, tol)?;
            let su3 = build_su(3, tol)?;
            let g = Arc::new(LieAlgebra::direct_sum("su(2)+su(3)", &[&su2, &su3], tol)?);
            let span = Matrix::from_fn(g.dim(), 3, |r, c| if r == c { 1.0 } else { 0.0 });
            vec![Subalgebra::from_span(g, "su(2)", &span, tol)?]
        }
        SpaceId::BlockSo { n, k } => {
            let g = Arc::new(build_so(n, tol)?);
            vec![block_so(&g, k, tol)?]
        }
        SpaceId::BlockSu { n, k } => {
            let g = Arc::new(build_su(n, tol)?);
            vec![block_su(&g, n, k, tol)?]
        }
        SpaceId::BlockSp { n, k } => {
            let g = Arc::new(build_sp(n, tol)?);
            vec![block_sp(&g, n, k, tol)?]
        }
    };
    EmbeddingChain::new(name, levels, tol)
}

fn table1_levels(row: Table1Row, tol: &TolerancePolicy) -> Result<Vec<Subalgebra>, BuildError> {
    row.validate()?;
    Ok(match row {
        Table1Row::Row1 | Table1Row::Row2 | Table1Row::Row3 => {
            let n = match row {
                Table1Row::Row1 => 9,
                Table1Row::Row2 => 10,
                _ => 11,
            };
            let g = Arc::new(build_so(n, tol)?);
            let spin7 = spin7_inside(g.clone(), tol)?;
            let so8 = block_so(&g, 8, tol)?;
            vec![spin7, so8]
        }
        Table1Row::Row5 { n, p } => {
            let total = n + p;
            let g = Arc::new(build_su(total, tol)?);
            let h = block_su(&g, total, n, tol)?;
            let k = Subalgebra::from_constraints(
                g.clone(),
                format!("s(u({n})+u({p}))"),
                |x| complex_entries(x, total, |r, c| (r < n) != (c < n)),
                tol,
            )?;
            expect_dim(&k, n * n + p * p - 1)?;
            vec![h, k]
        }
        Table1Row::Row6 { n } => {
            let g = Arc::new(build_so(2 * n + 1, tol)?);
            let su = unitary_part(&g, n, true, tol)?;
            let u = unitary_part(&g, n, false, tol)?;
            let so = block_so(&g, 2 * n, tol)?;
            vec![su, u, so]
        }
        Table1Row::Row7 { n } => {
            let m = 2 * n + 1;
            let g = Arc::new(build_so(2 * m, tol)?);
            let su = unitary_part(&g, m, true, tol)?;
            let u = unitary_part(&g, m, false, tol)?;
            vec![su, u]
        }
        Table1Row::Row8 { n } => {
            let m = n + 1;
            let g = Arc::new(build_sp(m, tol)?);
            let h = block_sp(&g, m, n, tol)?;
            let inside = move |i: usize| i < n || (m..m + n).contains(&i);
            let k = Subalgebra::from_constraints(
                g.clone(),
                format!("sp({n})+sp(1)"),
                |x| complex_entries(x, 2 * m, |r, c| inside(r) != inside(c)),
                tol,
            )?;
            expect_dim(&k, n * (2 * n + 1) + 3)?;
            vec![h, k]
        }
        Table1Row::Row9 { n } => {
            let total = 2 * n + 1;
            let g = Arc::new(build_su(total, tol)?);
            let su2n = block_su(&g, total, 2 * n, tol)?;
            let sp = symplectic_in_su(&g, total, n, tol)?;
            vec![sp, su2n]
        }
        Table1Row::Row10 => {
            let g = Arc::new(build_so(8, tol)?);
            let spin7 = spin7_inside(g.clone(), tol)?;
            // g2 is the stabiliser of the unit octonion inside spin(7).
            let e0 = {
                let mut v = Vector::zeros(8);
                v[0] = 1.0;
                v
            };
            let cols: Vec<Vector> = spin7.algebra().basis().iter().map(|b| b * &e0).collect();
            let act = Matrix::from_fn(8, spin7.dim(), |r, c| cols[c][r]);
            let stab = kernel_basis(&act, tol);
            let span = spin7.inclusion() * stab;
            let g2 = Subalgebra::from_span(g.clone(), "g2", &span, tol)?;
            expect_dim(&g2, 14)?;
            vec![g2, spin7]
        }
        Table1Row::Row11 => {
            let g = Arc::new(build_so(9, tol)?);
            let mats: Vec<Matrix> = g2_derivations(tol)?
                .iter()
                .map(|m| embed_top_left(m, 9))
                .collect();
            let g2 = Subalgebra::from_matrices(g.clone(), "g2", &mats, tol)?;
            expect_dim(&g2, 14)?;
            let so7 = block_so(&g, 7, tol)?;
            vec![g2, so7]
        }
    })
}

/// Embeds a realified complex `k×k` matrix into realified `total×total`
/// (top-left complex block).
fn embed_complex_top_left(m: &Matrix, total: usize) -> Matrix {
    let k = m.nrows() / 2;
    let mut out = Matrix::zeros(2 * total, 2 * total);
    for r in 0..2 * k {
        for c in 0..2 * k {
            let rr = if r < k { r } else { r - k + total };
            let cc = if c < k { c } else { c - k + total };
            out[(rr, cc)] = m[(r, c)];
        }
    }
    out
}
