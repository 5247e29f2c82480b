//! Structured singular value `μ_E` on 2×2 matrices for a linear structure
//! `E`, the rigidity test, and the classification of structures containing
//! the diagonal matrices.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain_f::{reconstruct_matrix, PointF};
use crate::error::{precondition, Error, Result};
use crate::matrix::{cis, operator_norm, re, spectral_radius, stream_rng, Matrix2, C64, ONE, ZERO};
use crate::optimize::{nelder_mead, nelder_mead_restarted};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum StructureKind {
    Scalar,
    Diagonal,
    UpperTriangular,
    LowerTriangular,
    Full,
    ETheta(f64),
    SkewDiag,
    Custom,
}

/// A linear subspace of `M₂(ℂ)` given by a basis of 1 to 4 matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Structure {
    basis: Vec<Matrix2>,
    name: Option<String>,
    kind: StructureKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MuStatus {
    Exact,
    Numeric,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuResult {
    pub value: f64,
    pub minimizer: Option<Matrix2>,
    pub status: MuStatus,
}

impl MuResult {
    fn infeasible() -> Self {
        Self { value: 0.0, minimizer: None, status: MuStatus::Infeasible }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SubspaceClass {
    IsETheta(f64),
    NotETheta,
}

fn unit(i: usize) -> Matrix2 {
    let mut e = [ZERO; 4];
    e[i] = ONE;
    Matrix2::from_entries(e)
}

fn vec4(m: &Matrix2) -> [C64; 4] {
    m.entries()
}

/// Complex Gram–Schmidt on the entry vectors. Returns the orthonormal
/// vectors kept and whether every input contributed one.
fn orthonormalize(mats: &[Matrix2], tol: f64) -> (Vec<[C64; 4]>, bool) {
    let mut q: Vec<[C64; 4]> = Vec::new();
    let mut all = true;
    for m in mats {
        let mut v = vec4(m);
        let scale = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for e in &q {
                let dot: C64 = e.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ei) in v.iter_mut().zip(e) {
                    *vi -= dot * ei;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if scale == 0.0 || n <= tol * scale {
            all = false;
            continue;
        }
        q.push(v.map(|z| z / n));
    }
    (q, all)
}

impl Structure {
    /// Builds a structure from a basis, checking linear independence.
    pub fn new(basis: Vec<Matrix2>, name: Option<String>) -> Result<Self> {
        Self::with_kind(basis, name, StructureKind::Custom)
    }

    fn with_kind(basis: Vec<Matrix2>, name: Option<String>, kind: StructureKind) -> Result<Self> {
        if basis.is_empty() || basis.len() > 4 {
            return Err(precondition(format!("basis has {} elements, expected 1 to 4", basis.len())));
        }
        if basis.iter().any(|b| !b.is_finite()) {
            return Err(precondition("basis has non-finite entries"));
        }
        let (_, independent) = orthonormalize(&basis, 1e-10);
        if !independent {
            return Err(precondition("basis is linearly dependent"));
        }
        Ok(Self { basis, name, kind })
    }

    fn preset(basis: Vec<Matrix2>, name: &str, kind: StructureKind) -> Self {
        Self::with_kind(basis, Some(name.to_string()), kind).expect("preset bases are independent")
    }

    pub fn scalar() -> Self {
        Self::preset(vec![Matrix2::identity()], "scalar", StructureKind::Scalar)
    }

    pub fn diagonal() -> Self {
        Self::preset(vec![unit(0), unit(3)], "diag", StructureKind::Diagonal)
    }

    pub fn upper_triangular() -> Self {
        Self::preset(vec![unit(0), unit(1), unit(3)], "upper", StructureKind::UpperTriangular)
    }

    pub fn lower_triangular() -> Self {
        Self::preset(vec![unit(0), unit(2), unit(3)], "lower", StructureKind::LowerTriangular)
    }

    pub fn full() -> Self {
        Self::preset(vec![unit(0), unit(1), unit(2), unit(3)], "full", StructureKind::Full)
    }

    /// `{[[z₁, w], [e^{iθ}w, z₂]]}`.
    pub fn e_theta(theta: f64) -> Self {
        let off = Matrix2::new(ZERO, ONE, cis(theta), ZERO);
        Self::preset(vec![unit(0), unit(3), off], &format!("e_theta:{theta}"), StructureKind::ETheta(theta))
    }

    /// `{[[z, w₁], [w₂, −z]]}`.
    pub fn skew_diag() -> Self {
        let d = Matrix2::diag(ONE, -ONE);
        Self::preset(vec![d, unit(1), unit(2)], "skewdiag", StructureKind::SkewDiag)
    }

    pub fn basis(&self) -> &[Matrix2] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("custom({})", self.basis.len()))
    }

    /// `Σ cᵢ Bᵢ`.
    pub fn combine(&self, c: &[C64]) -> Matrix2 {
        self.basis.iter().zip(c).fold(Matrix2::zero(), |acc, (b, ci)| acc + b.scale(*ci))
    }

    /// Least-squares coordinates of `m` in the basis and the Frobenius
    /// distance from `m` to the span.
    pub fn project(&self, m: &Matrix2) -> (Vec<C64>, f64) {
        let k = self.dim();
        // normal equations in real form: 2k unknowns
        let cols: Vec<[C64; 4]> = self.basis.iter().map(vec4).collect();
        let target = vec4(m);
        let mut gram = vec![vec![0.0; 2 * k]; 2 * k];
        let mut rhs = vec![0.0; 2 * k];
        let real_col = |c: &[C64; 4], imag: bool| -> [f64; 8] {
            let mut out = [0.0; 8];
            for (i, z) in c.iter().enumerate() {
                let z = if imag { z * C64::new(0.0, 1.0) } else { *z };
                out[2 * i] = z.re;
                out[2 * i + 1] = z.im;
            }
            out
        };
        let flat: Vec<[f64; 8]> = (0..2 * k).map(|j| real_col(&cols[j / 2], j % 2 == 1)).collect();
        let t = real_col(&target, false);
        for a in 0..2 * k {
            for b in 0..2 * k {
                gram[a][b] = flat[a].iter().zip(&flat[b]).map(|(x, y)| x * y).sum();
            }
            rhs[a] = flat[a].iter().zip(&t).map(|(x, y)| x * y).sum();
        }
        let sol = crate::optimize::solve_dense(gram, rhs).unwrap_or_else(|| vec![0.0; 2 * k]);
        let c: Vec<C64> = sol.chunks(2).map(|w| C64::new(w[0], w[1])).collect();
        let resid = (*m - self.combine(&c)).frobenius_sq().sqrt();
        (c, resid)
    }

    pub fn contains(&self, m: &Matrix2, tol: f64) -> bool {
        let scale = m.frobenius_sq().sqrt().max(1.0);
        self.project(m).1 <= tol * scale
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        match key.as_str() {
            "scalar" => Ok(Self::scalar()),
            "diag" | "diagonal" => Ok(Self::diagonal()),
            "upper" => Ok(Self::upper_triangular()),
            "lower" => Ok(Self::lower_triangular()),
            "full" => Ok(Self::full()),
            "skewdiag" => Ok(Self::skew_diag()),
            _ => match key.strip_prefix("e_theta:").map(|t| t.trim().parse::<f64>()) {
                Some(Ok(theta)) if theta.is_finite() => Ok(Self::e_theta(theta)),
                _ => Err(Error::UnknownStructure(s.to_string())),
            },
        }
    }
}

/// Coefficients of `det(I − A·Σcᵢ Bᵢ) = 1 − Σ tᵢcᵢ + Σ Dᵢⱼ cᵢcⱼ`.
struct DetPolynomial {
    t: Vec<C64>,
    d: Vec<Vec<C64>>,
}

impl DetPolynomial {
    fn new(a: &Matrix2, e: &Structure) -> Self {
        let m: Vec<Matrix2> = e.basis.iter().map(|b| *a * *b).collect();
        let k = m.len();
        let t = m.iter().map(|mi| mi.trace()).collect();
        let mut d = vec![vec![ZERO; k]; k];
        for i in 0..k {
            for j in 0..k {
                d[i][j] = if i == j {
                    m[i].det()
                } else {
                    0.5 * ((m[i] + m[j]).det() - m[i].det() - m[j].det())
                };
            }
        }
        Self { t, d }
    }

    fn is_constant(&self, scale: f64) -> bool {
        let eps = 1e-14 * scale.max(1e-300);
        self.t.iter().all(|z| z.norm() <= eps) && self.d.iter().flatten().all(|z| z.norm() <= eps * scale.max(1.0))
    }

    fn eval(&self, c: &[C64]) -> C64 {
        let mut v = ONE;
        for (i, ci) in c.iter().enumerate() {
            v -= self.t[i] * ci;
            for (j, cj) in c.iter().enumerate() {
                v += self.d[i][j] * ci * cj;
            }
        }
        v
    }
}

fn to_complex(x: &[f64]) -> Vec<C64> {
    x.chunks(2).map(|w| C64::new(w[0], w[1])).collect()
}

fn to_real(c: &[C64]) -> Vec<f64> {
    c.iter().flat_map(|z| [z.re, z.im]).collect()
}

/// Largest-modulus eigenvalue.
fn top_eigenvalue(m: &Matrix2) -> C64 {
    let (l1, l2) = m.eigenvalues();
    if l1.norm() >= l2.norm() {
        l1
    } else {
        l2
    }
}

/// `1 / inf{‖X‖ : X ∈ E, det(I − AX) = 0}`, or 0 when no such `X` exists.
///
/// Scalar and full structures use the closed forms `r(A)` and `‖A‖`.
/// Otherwise `sup ρ(AX)/‖X‖` over `X ∈ E` is maximized by multistart
/// Nelder–Mead over the coordinates of `X`; along each ray `X = τX₀` the
/// singular points are exactly `τ = 1/λ` for the eigenvalues `λ` of `AX₀`,
/// so this sweeps the whole constraint set.
pub fn mu_value(a: &Matrix2, e: &Structure, tol: f64) -> Result<MuResult> {
    if !a.is_finite() {
        return Err(precondition("matrix has non-finite entries"));
    }
    let poly = DetPolynomial::new(a, e);
    let scale = a.frobenius_sq().sqrt() * e.basis.iter().map(|b| b.frobenius_sq().sqrt()).fold(0.0, f64::max);
    if poly.is_constant(scale) {
        return Ok(MuResult::infeasible());
    }
    match e.kind {
        StructureKind::Scalar => {
            let lam = top_eigenvalue(a);
            let value = lam.norm();
            return Ok(MuResult {
                value,
                minimizer: Some(Matrix2::identity().scale(ONE / lam)),
                status: MuStatus::Exact,
            });
        }
        StructureKind::Full => {
            let (v, u) = a.top_singular_pair().expect("nonzero matrix");
            let s1 = operator_norm(a);
            // X = v u* / σ₁ makes u an eigenvector of AX with eigenvalue 1
            let x = Matrix2::new(v[0] * u[0].conj(), v[0] * u[1].conj(), v[1] * u[0].conj(), v[1] * u[1].conj())
                .scale(re(1.0 / s1));
            return Ok(MuResult { value: s1, minimizer: Some(x), status: MuStatus::Exact });
        }
        _ => {}
    }
    mu_numeric(a, e, &poly, tol)
}

fn mu_numeric(a: &Matrix2, e: &Structure, poly: &DetPolynomial, tol: f64) -> Result<MuResult> {
    let k = e.dim();
    let ratio = |x: &[f64]| -> f64 {
        let c = to_complex(x);
        let m = e.combine(&c);
        let n = operator_norm(&m);
        if !(n > 0.0) {
            return 0.0;
        }
        spectral_radius(&(*a * m)) / n
    };
    let objective = |x: &[f64]| -ratio(x);

    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some((v, u)) = a.top_singular_pair() {
        let x_full = Matrix2::new(v[0] * u[0].conj(), v[0] * u[1].conj(), v[1] * u[0].conj(), v[1] * u[1].conj());
        let (c, _) = e.project(&x_full);
        if c.iter().any(|z| z.norm() > 0.0) {
            starts.push(to_real(&c));
        }
    }
    let (c_id, r_id) = e.project(&Matrix2::identity());
    if r_id < 1e-12 {
        starts.push(to_real(&c_id));
    }
    let mut rng = stream_rng(0x6d75, k as u64);
    for _ in 0..20 {
        starts.push((0..2 * k).map(|_| rng.random_range(-1.0..1.0)).collect());
    }

    // short runs from every start, then polish the best few
    let mut runs: Vec<(f64, Vec<f64>)> = starts
        .iter()
        .map(|s| {
            let m = nelder_mead(objective, s, 0.3, 1e-10, 400 * k);
            (m.fx, m.x)
        })
        .collect();
    runs.sort_by(|l, r| l.0.total_cmp(&r.0));
    let mut best: Option<(f64, Vec<f64>)> = None;
    for (_, x) in runs.iter().take(4) {
        let m = nelder_mead_restarted(objective, x, 0.05, 1e-15, 4000 * k, 8);
        if best.as_ref().is_none_or(|b| m.fx < b.0) {
            best = Some((m.fx, m.x));
        }
    }
    let (fx, x) = best.expect("at least one start");
    let value = -fx;
    if !(value > 0.0) {
        return Err(Error::OptimizerNoConverge("no direction with a nonzero eigenvalue found".into()));
    }
    let c = to_complex(&x);
    let lam = top_eigenvalue(&(*a * e.combine(&c)));
    let c_min: Vec<C64> = c.iter().map(|z| z / lam).collect();
    let residual = poly.eval(&c_min).norm();
    if residual > tol.max(1e-7) {
        return Err(Error::OptimizerNoConverge(format!("constraint residual {residual:e}")));
    }
    Ok(MuResult { value, minimizer: Some(e.combine(&c_min)), status: MuStatus::Numeric })
}

/// `r(A) − tol ≤ μ_E(A) ≤ ‖A‖ + tol`; requires `I ∈ E`.
pub fn mu_sandwich_check(a: &Matrix2, e: &Structure, tol: f64) -> Result<bool> {
    if !e.contains(&Matrix2::identity(), 1e-10) {
        return Err(precondition(format!("{} does not contain the identity", e.name())));
    }
    let mu = mu_value(a, e, tol)?.value;
    let scale = operator_norm(a).max(1.0);
    Ok(spectral_radius(a) - tol * scale <= mu && mu <= operator_norm(a) + tol * scale)
}

/// Real row reduction of `[m | b]`: a particular solution and a basis of
/// the null space, or `None` if inconsistent.
fn affine_solutions(m: &[Vec<f64>], b: &[f64]) -> Option<(Vec<f64>, Vec<Vec<f64>>)> {
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<f64>> = m.iter().zip(b).map(|(r, bi)| r.iter().copied().chain([*bi]).collect()).collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs())).max(1.0);
    let eps = 1e-10 * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[p][col].abs() <= eps {
            continue;
        }
        a.swap(r, p);
        let piv = a[r][col];
        for v in a[r].iter_mut() {
            *v /= piv;
        }
        for i in 0..rows {
            if i != r {
                let f = a[i][col];
                if f != 0.0 {
                    for j in 0..=cols {
                        a[i][j] -= f * a[r][j];
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| row[cols].abs() > 1e-9 * scale) {
        return None;
    }
    let mut x0 = vec![0.0; cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x0[pc] = a[i][cols];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0.0; cols];
            v[fc] = 1.0;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc];
            }
            v
        })
        .collect();
    Some((x0, null))
}

/// Searches `{A ∈ E : Au = v}` for an element of norm 1.
///
/// Returns the norm minimizer when its norm is at most `1 + tol`, `None`
/// when the smallest norm is larger, and `InfeasibleConstraint` when no
/// element of `E` maps `u` to `v`.
pub fn rigidity_check(e: &Structure, u: [C64; 2], v: [C64; 2], tol: f64) -> Result<Option<Matrix2>> {
    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    if (nu - 1.0).abs() > 1e-12 || (nv - 1.0).abs() > 1e-12 {
        return Err(precondition("u and v must be unit vectors"));
    }
    let k = e.dim();
    // Σ cᵢ Bᵢu = v as 4 real equations in 2k real unknowns
    let images: Vec<[C64; 2]> = e.basis.iter().map(|b| b.apply(u)).collect();
    let mut m = vec![vec![0.0; 2 * k]; 4];
    for (j, img) in images.iter().enumerate() {
        for (r, z) in img.iter().enumerate() {
            // c = x + iy contributes (x + iy)·z
            m[2 * r][2 * j] = z.re;
            m[2 * r][2 * j + 1] = -z.im;
            m[2 * r + 1][2 * j] = z.im;
            m[2 * r + 1][2 * j + 1] = z.re;
        }
    }
    let rhs = [v[0].re, v[0].im, v[1].re, v[1].im];
    let (x0, null) = affine_solutions(&m, &rhs).ok_or(Error::InfeasibleConstraint)?;
    let point = |y: &[f64]| -> Matrix2 {
        let mut x = x0.clone();
        for (yi, dir) in y.iter().zip(&null) {
            for (xj, dj) in x.iter_mut().zip(dir) {
                *xj += yi * dj;
            }
        }
        e.combine(&to_complex(&x))
    };
    let best = if null.is_empty() {
        point(&[])
    } else {
        let norm = |y: &[f64]| operator_norm(&point(y));
        let mut rng = stream_rng(0x7269, null.len() as u64);
        let mut best_y = vec![0.0; null.len()];
        let mut best_f = norm(&best_y);
        for s in 0..10 {
            let start: Vec<f64> = if s == 0 {
                vec![0.0; null.len()]
            } else {
                (0..null.len()).map(|_| rng.random_range(-1.0..1.0)).collect()
            };
            let m = nelder_mead_restarted(norm, &start, 0.25, 1e-15, 2000 * null.len(), 6);
            if m.fx < best_f {
                best_f = m.fx;
                best_y = m.x;
            }
        }
        point(&best_y)
    };
    if operator_norm(&best) <= 1.0 + tol {
        Ok(Some(best))
    } else {
        Ok(None)
    }
}

/// `n` unit vectors of `ℂ²`, `(cos α, e^{iφ} sin α)`, spread over
/// `α ∈ [0, π/2]` and golden-angle phases. The first and last are `e₁`, `e₂`.
pub fn unit_vector_grid(n: usize) -> Vec<[C64; 2]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let alpha = if n > 1 { std::f64::consts::FRAC_PI_2 * i as f64 / (n - 1) as f64 } else { 0.0 };
            let phase = cis(golden * i as f64);
            if i + 1 == n && n > 1 {
                [ZERO, ONE]
            } else {
                [re(alpha.cos()), phase * alpha.sin()]
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormMismatch {
    pub matrix: Matrix2,
    pub mu: f64,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidityMiss {
    pub u: [C64; 2],
    pub v: [C64; 2],
    /// Smallest norm found, or `None` if no element maps `u` to `v`.
    pub min_norm: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuNormReport {
    pub structure: String,
    pub n_samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub mismatches: Vec<NormMismatch>,
    pub rigidity_misses: Vec<RigidityMiss>,
}

impl MuNormReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.rigidity_misses.is_empty()
    }
}

/// Sample matrix `i` of the μ suites: `E₁₂` and `E₂₁` first, then complex
/// Gaussian matrices at scales 0.1, 1 and 10 in turn.
pub fn mu_sample(seed: u64, i: usize) -> Matrix2 {
    match i {
        0 => Matrix2::e12(),
        1 => Matrix2::e21(),
        _ => {
            let mut rng = stream_rng(seed, i as u64);
            let scale = [0.1, 1.0, 10.0][i % 3];
            crate::matrix::sample_gaussian(&mut rng).scale(re(scale))
        }
    }
}

/// Compares `μ_E` with the operator norm on `n_samples` matrices and runs
/// the rigidity search on `n_samples` pairs drawn from a unit-vector grid.
pub fn mu_equals_norm_suite(e: &Structure, n_samples: usize, seed: u64, tol: f64) -> MuNormReport {
    let mismatches = (0..n_samples)
        .map(|i| mu_sample(seed, i))
        .filter_map(|a| {
            let norm = operator_norm(&a);
            let mu = mu_value(&a, e, tol).map(|r| r.value).unwrap_or(f64::NAN);
            if (mu - norm).abs() <= tol * norm {
                None
            } else {
                Some(NormMismatch { matrix: a, mu, norm })
            }
        })
        .collect();
    let grid = unit_vector_grid(20);
    let mut rng = stream_rng(seed, u64::MAX);
    let rigidity_misses = (0..n_samples)
        .filter_map(|i| {
            let (u, v) = if i == 0 {
                (grid[0], grid[19])
            } else {
                (grid[rng.random_range(0..20)], grid[rng.random_range(0..20)])
            };
            match rigidity_check(e, u, v, tol) {
                Ok(Some(_)) => None,
                Ok(None) => Some(RigidityMiss { u, v, min_norm: Some(f64::INFINITY) }),
                Err(_) => Some(RigidityMiss { u, v, min_norm: None }),
            }
        })
        .collect();
    MuNormReport { structure: e.name(), n_samples, seed, tol, mismatches, rigidity_misses }
}

/// Whether some matrix over `pt` (there are two, `B` and `Bᵗ`) has
/// `μ_E < 1 − tol`.
pub fn f_mu_membership(pt: PointF, e: &Structure, tol: f64) -> Result<bool> {
    let b = reconstruct_matrix(&pt);
    if mu_value(&b, e, tol)?.value < 1.0 - tol {
        return Ok(true);
    }
    Ok(mu_value(&b.transpose(), e, tol)?.value < 1.0 - tol)
}

/// Decides whether a 3-dimensional structure containing the diagonal
/// matrices is `E_θ`, and recovers `θ`.
pub fn classify_subspace(e: &Structure, tol: f64) -> Result<SubspaceClass> {
    if e.dim() != 3 {
        return Err(precondition(format!("structure has dimension {}, expected 3", e.dim())));
    }
    if !(e.contains(&unit(0), 1e-10) && e.contains(&unit(3), 1e-10)) {
        return Err(precondition("structure does not contain the diagonal matrices"));
    }
    let (alpha, beta) = e
        .basis
        .iter()
        .map(|b| (b.a12, b.a21))
        .max_by(|l, r| (l.0.norm_sqr() + l.1.norm_sqr()).total_cmp(&(r.0.norm_sqr() + r.1.norm_sqr())))
        .expect("nonempty basis");
    let (na, nb) = (alpha.norm(), beta.norm());
    let scale = na.max(nb);
    if na > tol * scale && nb > tol * scale && (na - nb).abs() <= tol * scale {
        Ok(SubspaceClass::IsETheta((beta / alpha).arg()))
    } else {
        Ok(SubspaceClass::NotETheta)
    }
}

/// `E₁₂` or `E₂₁` with `μ_E` different from the norm (1), if either is.
pub fn norm_witness(e: &Structure, tol: f64) -> Result<Option<(Matrix2, MuResult)>> {
    for w in [Matrix2::e12(), Matrix2::e21()] {
        let r = mu_value(&w, e, tol)?;
        if (r.value - 1.0).abs() > tol {
            return Ok(Some((w, r)));
        }
    }
    Ok(None)
}
