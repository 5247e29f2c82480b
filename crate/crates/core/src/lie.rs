//! The Lie ball `L_n`, the two-to-one map `Λ_n`, and the biholomorphism
//! carrying `Λ₄(L₄)` onto `F`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain_f::{PointF, ShilovParamF};
use crate::error::{precondition, Error, Result};
use crate::matrix::{cis, C64};
use crate::optimize::levenberg_marquardt;
use crate::verdict::{min_slack, strictly_opposed, MembershipVerdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCn {
    pub coords: Vec<C64>,
}

impl PointCn {
    pub fn new(coords: Vec<C64>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `z • z = z₁² + … + zₙ²` (no conjugation).
    pub fn bullet(&self) -> C64 {
        self.coords.iter().map(|z| z * z).sum()
    }
}

/// `θ` and a unit vector `x ∈ S³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShilovParamL4 {
    pub theta: f64,
    pub x: [f64; 4],
}

fn need_dim(z: &PointCn, n: Option<usize>) -> Result<()> {
    match n {
        Some(n) if z.dim() != n => Err(precondition(format!("expected {n} coordinates, got {}", z.dim()))),
        None if z.dim() < 2 => Err(precondition("need at least 2 coordinates")),
        _ => Ok(()),
    }
}

/// Membership in `L_n`: `‖z‖² < 1` and `2‖z‖² − |z•z|² < 1`.
///
/// The equivalent form `√(‖z‖⁴ − |z•z|²) < 1 − ‖z‖²` is checked alongside.
/// The Shilov flag marks `e^{iθ}·x` with `x` a real unit vector.
pub fn lie_ball_classify(z: &PointCn, tol: f64) -> Result<MembershipVerdict> {
    need_dim(z, None)?;
    let n2 = z.norm_sqr();
    let b = z.bullet().norm();
    let ball = 1.0 - n2;
    let lie = 1.0 - 2.0 * n2 + b * b;
    let root_form = (1.0 - n2) - (n2 * n2 - b * b).max(0.0).sqrt();
    let margin = min_slack(&[ball, lie]);
    if strictly_opposed(margin, root_form, tol) {
        return Err(Error::CriteriaDisagree {
            domain: "L",
            detail: format!("polynomial form {margin:e} vs root form {root_form:e}"),
        });
    }
    let v = MembershipVerdict::from_margin(margin, tol);
    Ok(v.with_shilov((n2 - 1.0).abs() <= tol && (b - 1.0).abs() <= tol))
}

/// `(z₁, z₂, …, zₙ) ↦ (z₁², z₂, …, zₙ)`.
pub fn lambda_map(z: &PointCn) -> Result<PointCn> {
    need_dim(z, None)?;
    let mut out = z.coords.clone();
    out[0] = out[0] * out[0];
    Ok(PointCn::new(out))
}

/// `(w₃ + iw₄, −w₃ + iw₄, −w₂² − w₃² − w₄² − w₁, 2w₂)`.
pub fn biholo_f(w: &PointCn) -> Result<PointF> {
    need_dim(w, Some(4))?;
    let [w1, w2, w3, w4] = [w.coords[0], w.coords[1], w.coords[2], w.coords[3]];
    let i = C64::new(0.0, 1.0);
    Ok(PointF::new(
        w3 + i * w4,
        -w3 + i * w4,
        -(w2 * w2) - w3 * w3 - w4 * w4 - w1,
        2.0 * w2,
    ))
}

/// `(e^{2iθ}x₁², e^{iθ}x₂, e^{iθ}x₃, e^{iθ}x₄)`.
pub fn shilov_l4_param(q: ShilovParamL4) -> Result<PointCn> {
    let r: f64 = q.x.iter().map(|t| t * t).sum();
    if !((r - 1.0).abs() <= 1e-12) {
        return Err(precondition(format!("|x|² = {r} is not 1")));
    }
    Ok(shilov_l4_map(q.theta, q.x))
}

fn shilov_l4_map(theta: f64, x: [f64; 4]) -> PointCn {
    let u = cis(theta);
    PointCn::new(vec![u * u * (x[0] * x[0]), u * x[1], u * x[2], u * x[3]])
}

/// Unit quaternion from three numbers in `[0, 1)` (Shoemake's method),
/// uniform on `S³` when the inputs are.
pub fn sphere3_point(u: [f64; 3]) -> [f64; 4] {
    use std::f64::consts::TAU;
    let (a, b) = ((1.0 - u[0]).sqrt(), u[0].sqrt());
    [
        a * (TAU * u[1]).sin(),
        a * (TAU * u[1]).cos(),
        b * (TAU * u[2]).sin(),
        b * (TAU * u[2]).cos(),
    ]
}

/// Low-discrepancy grid on `S³ × [0, π)`: `n_sphere` points of an additive
/// recurrence in the unit cube mapped to the sphere, times `n_theta`
/// equally spaced angles.
pub fn shilov_l4_grid(n_sphere: usize, n_theta: usize) -> Vec<ShilovParamL4> {
    // plastic-type constant for three dimensions: root of x⁴ = x + 1
    let g = 1.220_744_084_605_759_5_f64;
    let alpha = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
    let mut out = Vec::with_capacity(n_sphere * n_theta);
    for i in 0..n_sphere {
        let u = alpha.map(|a| (0.5 + a * (i as f64 + 1.0)).fract());
        let x = sphere3_point(u);
        for j in 0..n_theta {
            let theta = std::f64::consts::PI * j as f64 / n_theta as f64;
            out.push(ShilovParamL4 { theta, x });
        }
    }
    out
}

/// Grid of size close to `n` with 25 angles.
pub fn default_shilov_l4_grid(n: usize) -> Vec<ShilovParamL4> {
    let n_theta = 25.min(n.max(1));
    shilov_l4_grid(n.div_ceil(n_theta), n_theta)
}

pub fn sample_sphere3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    sphere3_point([rng.random(), rng.random(), rng.random()])
}

/// Uniform point of `L_n` by rejection from the unit ball of `ℂⁿ`.
pub fn sample_lie_ball<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PointCn {
    loop {
        let coords: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let z = PointCn::new(coords);
        let n2 = z.norm_sqr();
        let b = z.bullet().norm();
        if n2 < 1.0 && 2.0 * n2 - b * b < 1.0 {
            return z;
        }
    }
}

/// Image of the distinguished boundary of `L₄` under [`biholo_f`], kept with
/// its parameters for nearest-point queries.
pub struct TransportedGrid {
    pub params: Vec<ShilovParamL4>,
    pub points: Vec<PointF>,
}

fn transported(theta: f64, x: [f64; 4]) -> PointF {
    biholo_f(&shilov_l4_map(theta, x)).expect("four coordinates")
}

impl TransportedGrid {
    pub fn new(params: Vec<ShilovParamL4>) -> Self {
        let points = params.iter().map(|q| transported(q.theta, q.x)).collect();
        Self { params, points }
    }

    /// Distance from `target` to the transported set: the nearest grid
    /// point, refined by least squares over `(θ, x)` with `x` kept on `S³`.
    pub fn distance(&self, target: &PointF) -> f64 {
        let mut order: Vec<(f64, usize)> =
            self.points.iter().enumerate().map(|(i, p)| (p.dist(target), i)).collect();
        order.sort_by(|l, r| l.0.total_cmp(&r.0));
        let mut best = order.first().map_or(f64::INFINITY, |e| e.0);
        for &(_, i) in order.iter().take(3) {
            let q = self.params[i];
            let start = [q.theta, q.x[0], q.x[1], q.x[2], q.x[3]];
            let residual = |v: &[f64]| {
                let r = (v[1] * v[1] + v[2] * v[2] + v[3] * v[3] + v[4] * v[4]).sqrt().max(1e-300);
                let x = [v[1] / r, v[2] / r, v[3] / r, v[4] / r];
                let g = transported(v[0], x);
                g.coords()
                    .iter()
                    .zip(target.coords())
                    .flat_map(|(u, w)| [(u - w).re, (u - w).im])
                    .collect::<Vec<f64>>()
            };
            let (_, d) = levenberg_marquardt(residual, &start, 200);
            best = best.min(d);
        }
        best
    }
}

/// The same boundary parameters written for the `F` parametrization:
/// `(θ, x₂, x₃, x₄)`.
pub fn as_shilov_f_param(q: ShilovParamL4) -> ShilovParamF {
    ShilovParamF { theta: q.theta, x2: q.x[1], x3: q.x[2], x4: q.x[3] }
}
