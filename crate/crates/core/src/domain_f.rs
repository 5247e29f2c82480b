//! The domain `F = {(b₁₁, b₂₂, det B, b₁₂ + b₂₁) : ‖B‖ < 1}` and its
//! distinguished boundary.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classical::{g2_classify, PointG2, PointPenta, PointTetra};
use crate::error::{precondition, Error, Result};
use crate::matrix::{cis, operator_norm, quadratic_roots, Matrix2, C64};
use crate::optimize::levenberg_marquardt;
use crate::verdict::{min_slack, strictly_opposed, MembershipVerdict, Region};
use crate::DEFAULT_TOL;

/// `(x, a, p, s)`: diagonal entries, determinant, and sum of the
/// off-diagonal entries of a 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointF {
    pub x: C64,
    pub a: C64,
    pub p: C64,
    pub s: C64,
}

impl PointF {
    pub fn new(x: C64, a: C64, p: C64, s: C64) -> Self {
        Self { x, a, p, s }
    }

    pub fn coords(&self) -> [C64; 4] {
        [self.x, self.a, self.p, self.s]
    }

    pub fn from_coords(c: [C64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn dist(&self, other: &PointF) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(u, v)| (u - v).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// The weighted dilation `(tx, ta, t²p, ts)`.
    pub fn dilate(&self, t: C64) -> PointF {
        PointF::new(t * self.x, t * self.a, t * t * self.p, t * self.s)
    }

    fn is_finite(&self) -> bool {
        self.coords().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// `θ` and `(x₂, x₃, x₄)` in the closed unit ball of `ℝ³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShilovParamF {
    pub theta: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

/// `(z, w, η)` with `|z|² + |w|² ≤ 1` and `|η| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallParamF {
    pub z: C64,
    pub w: C64,
    pub eta: C64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FRelations {
    pub g2: PointG2,
    pub tetra: PointTetra,
    pub penta: PointPenta,
}

pub fn pi_f(b: &Matrix2) -> PointF {
    PointF::new(b.a11, b.a22, b.det(), b.a12 + b.a21)
}

/// `1 − |a|² − |x|² + |p|² − |s|²/2 − |s² − 4(ax − p)|/2`, which equals
/// `det(I − B*B)` for any `B` over the point.
pub fn q_form(pt: &PointF) -> f64 {
    let q = pt.a * pt.x - pt.p;
    1.0 - pt.a.norm_sqr() - pt.x.norm_sqr() + pt.p.norm_sqr()
        - pt.s.norm_sqr() / 2.0
        - (pt.s * pt.s - 4.0 * q).norm() / 2.0
}

fn f_slacks(pt: &PointF) -> [f64; 4] {
    let (s, q) = (pt.s, pt.a * pt.x - pt.p);
    [
        (1.0 - q.norm_sqr()) - (s - s.conj() * q).norm(),
        2.0 - s.norm(),
        1.0 - pt.p.norm(),
        q_form(pt),
    ]
}

/// Membership in `F` / `F̄`.
///
/// Interior iff `(s, ax − p) ∈ G₂`, `|p| < 1` and [`q_form`] is positive.
/// The margin is the smallest of those slacks.
pub fn f_classify(pt: PointF, tol: f64) -> MembershipVerdict {
    let margin = min_slack(&f_slacks(&pt));
    let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
    MembershipVerdict::from_margin(margin, tol).with_shilov(shilov_f_test(pt, tol))
}

/// A matrix over `pt`: diagonal `(x, a)`, off-diagonal entries the roots of
/// `t² − st + (ax − p)`.
pub fn reconstruct_matrix(pt: &PointF) -> Matrix2 {
    let (b12, b21) = quadratic_roots(pt.s, pt.a * pt.x - pt.p);
    Matrix2::new(pt.x, b12, b21, pt.a)
}

/// Membership decided by the operator norm of [`reconstruct_matrix`].
pub fn f_classify_matrix_oracle(pt: PointF, tol: f64) -> MembershipVerdict {
    let norm = operator_norm(&reconstruct_matrix(&pt));
    let margin = if norm.is_nan() { f64::NEG_INFINITY } else { 1.0 - norm };
    MembershipVerdict::from_margin(margin, tol).with_shilov(shilov_f_test(pt, tol))
}

/// `(rx, ra, r²p, rs)` for `0 < r < 1`.
pub fn f_scale(pt: PointF, r: f64) -> Result<PointF> {
    if !(r > 0.0 && r < 1.0) {
        return Err(precondition(format!("scale factor {r} is not in (0, 1)")));
    }
    Ok(pt.dilate(C64::new(r, 0.0)))
}

/// Minkowski functional for the `(1, 1, 2, 1)` weights, by bisection.
///
/// Membership of each dilate is read from the operator-norm form of the
/// criterion: near the distinguished boundary the inequality slacks vanish
/// to third order in the dilation and cannot locate the crossing to better
/// than about `1e-5`. Converges to relative accuracy `tol`.
pub fn minkowski_gauge(pt: PointF, tol: f64) -> Result<f64> {
    if pt.coords().iter().all(|z| *z == C64::new(0.0, 0.0)) {
        return Ok(0.0);
    }
    if !pt.is_finite() {
        return Err(precondition("non-finite coordinates"));
    }
    let inside = |t: f64| f_classify_matrix_oracle(pt.dilate(C64::new(1.0 / t, 0.0)), 0.0).margin > 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while !inside(hi) {
        hi *= 2.0;
        doublings += 1;
        if doublings > 60 {
            return Err(Error::OptimizerNoConverge(format!(
                "no dilation up to 2^60 brings the point inside (gauge bracket)"
            )));
        }
    }
    let mut lo = hi / 2.0;
    while inside(lo) {
        lo /= 2.0;
        if lo < f64::MIN_POSITIVE {
            return Ok(0.0);
        }
    }
    let tol = tol.max(f64::EPSILON);
    for _ in 0..200 {
        if hi - lo <= tol * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(λ₁, λ₂, −p, a + x)` where `λ₁, λ₂` are the roots of `t² − st + (ax − p)`.
pub fn f_swap(pt: PointF) -> PointF {
    let (l1, l2) = quadratic_roots(pt.s, pt.a * pt.x - pt.p);
    PointF::new(l1, l2, -pt.p, pt.a + pt.x)
}

/// The projections `(s, ax − p)`, `(x, a, p)` and `(a, s, −p)`.
pub fn f_relations(pt: PointF) -> FRelations {
    FRelations {
        g2: PointG2::new(pt.s, pt.a * pt.x - pt.p),
        tetra: PointTetra::new(pt.x, pt.a, pt.p),
        penta: PointPenta::new(pt.a, pt.s, -pt.p),
    }
}

/// Whether `(x₁, x₂, x₃, 0)` lies in `F`.
pub fn f_slice_s_zero(x1: C64, x2: C64, x3: C64) -> bool {
    f_classify(PointF::new(x1, x2, x3, C64::new(0.0, 0.0)), DEFAULT_TOL).is_interior()
}

/// Whether `(0, 0, p, s)` lies in `F`, checked against `(s, −p) ∈ G₂`.
pub fn f_slice_xa_zero(p: C64, s: C64) -> Result<bool> {
    let zero = C64::new(0.0, 0.0);
    let fv = f_classify(PointF::new(zero, zero, p, s), DEFAULT_TOL);
    let gv = g2_classify(PointG2::new(s, -p), DEFAULT_TOL)?;
    if strictly_opposed(fv.margin, gv.margin, DEFAULT_TOL) {
        return Err(Error::CriteriaDisagree {
            domain: "F",
            detail: format!("slice x = a = 0: F margin {:e}, G2 margin {:e}", fv.margin, gv.margin),
        });
    }
    Ok(fv.is_interior())
}

/// Closed-form membership in the distinguished boundary of `F`:
/// `(x, a, p) ∈ bE`, `s + s̄p = 0` and `|x|² + |s|²/4 ≤ 1`.
pub fn shilov_f_test(pt: PointF, tol: f64) -> bool {
    let PointF { x, a, p, s } = pt;
    let in_be = (x - a.conj() * p).norm() <= tol && (p.norm() - 1.0).abs() <= tol && a.norm() <= 1.0 + tol;
    in_be && (s + s.conj() * p).norm() <= tol && x.norm_sqr() + s.norm_sqr() / 4.0 <= 1.0 + tol
}

fn check_ball3(x2: f64, x3: f64, x4: f64) -> Result<()> {
    let r = x2 * x2 + x3 * x3 + x4 * x4;
    if r.is_finite() && r <= 1.0 + 1e-12 {
        Ok(())
    } else {
        Err(precondition(format!("x2² + x3² + x4² = {r} exceeds 1")))
    }
}

/// `g(u, x) = (u(x₃ + ix₄), −u(x₃ − ix₄), −u², 2u·x₂)` for a unit `u`.
pub fn shilov_f_map(u: C64, x2: f64, x3: f64, x4: f64) -> PointF {
    PointF::new(
        u * C64::new(x3, x4),
        -(u * C64::new(x3, -x4)),
        -(u * u),
        u * C64::new(2.0 * x2, 0.0),
    )
}

pub fn shilov_f_param(q: ShilovParamF) -> Result<PointF> {
    check_ball3(q.x2, q.x3, q.x4)?;
    Ok(shilov_f_map(cis(q.theta), q.x2, q.x3, q.x4))
}

/// `(z̄, −ηz, −η, w + w̄η)`.
pub fn shilov_f_from_ball(q: BallParamF) -> Result<PointF> {
    let r = q.z.norm_sqr() + q.w.norm_sqr();
    if !(r <= 1.0 + 1e-12) {
        return Err(precondition(format!("|z|² + |w|² = {r} exceeds 1")));
    }
    if !((q.eta.norm() - 1.0).abs() <= 1e-12) {
        return Err(precondition(format!("|eta| = {} is not 1", q.eta.norm())));
    }
    Ok(PointF::new(q.z.conj(), -(q.eta * q.z), -q.eta, q.w + q.w.conj() * q.eta))
}

/// Checks that `(u, x)` and `(−u, −x)` have bitwise equal images and that
/// nearby non-antipodal parameters (`θ ± 0.1`) do not.
pub fn shilov_f_double_cover(q: ShilovParamF) -> Result<bool> {
    check_ball3(q.x2, q.x3, q.x4)?;
    let u = cis(q.theta);
    let g = shilov_f_map(u, q.x2, q.x3, q.x4);
    let antipode = shilov_f_map(-u, -q.x2, -q.x3, -q.x4);
    let separated = [0.1, -0.1].iter().all(|d| {
        let other = shilov_f_map(cis(q.theta + d), q.x2, q.x3, q.x4);
        g.dist(&other) > DEFAULT_TOL
    });
    Ok(g == antipode && separated)
}

/// Uniform sample of the distinguished-boundary parameters.
pub fn sample_shilov_f_param<R: Rng + ?Sized>(rng: &mut R) -> ShilovParamF {
    let v = loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        if v.iter().map(|t| t * t).sum::<f64>() <= 1.0 {
            break v;
        }
    };
    ShilovParamF {
        theta: rng.random_range(0.0..std::f64::consts::TAU),
        x2: v[0],
        x3: v[1],
        x4: v[2],
    }
}

fn sample_disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.random::<f64>().sqrt();
    C64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Uniform point of the box `|x|, |a|, |s| ≤ 2.5`, `|p| ≤ 1.5`, which
/// contains `F̄`.
pub fn sample_box_point<R: Rng + ?Sized>(rng: &mut R) -> PointF {
    let x = sample_disc(rng, 2.5);
    let a = sample_disc(rng, 2.5);
    let p = sample_disc(rng, 1.5);
    let s = sample_disc(rng, 2.5);
    PointF::new(x, a, p, s)
}

/// Distance from `pt` to the parametrized distinguished boundary.
///
/// `(x₂, x₃, x₄)` is written as the tail of a unit vector of `ℝ⁴`, which
/// keeps the parametrization smooth up to the edge of the ball. A
/// low-discrepancy grid over `[0, π) × S³` supplies starts for
/// Levenberg–Marquardt.
pub fn shilov_f_distance(pt: PointF) -> f64 {
    static GRID: std::sync::OnceLock<Vec<(f64, [f64; 4], PointF)>> = std::sync::OnceLock::new();
    let grid = GRID.get_or_init(|| {
        crate::lie::shilov_l4_grid(1200, 24)
            .into_iter()
            .map(|q| (q.theta, q.x, shilov_f_map(cis(q.theta), q.x[1], q.x[2], q.x[3])))
            .collect()
    });
    let mut order: Vec<(f64, usize)> = grid.iter().enumerate().map(|(i, g)| (pt.dist(&g.2), i)).collect();
    order.sort_by(|l, r| l.0.total_cmp(&r.0));
    let mut best = order[0].0;
    for &(_, i) in order.iter().take(6) {
        let (theta, x, _) = grid[i];
        let residual = |v: &[f64]| {
            let r = (v[1] * v[1] + v[2] * v[2] + v[3] * v[3] + v[4] * v[4]).sqrt().max(1e-300);
            let g = shilov_f_map(cis(v[0]), v[2] / r, v[3] / r, v[4] / r);
            pt.coords()
                .iter()
                .zip(g.coords())
                .flat_map(|(u, w)| [(u - w).re, (u - w).im])
                .collect::<Vec<f64>>()
        };
        let (_, d) = levenberg_marquardt(residual, &[theta, x[0], x[1], x[2], x[3]], 200);
        best = best.min(d);
    }
    best
}

/// `(a₂₁, a₁₁, a₂₂, det A)`.
pub fn pi_hexa(b: &Matrix2) -> crate::hexablock::PointH {
    crate::hexablock::PointH::new(b.a21, b.a11, b.a22, b.det())
}

/// Region of a point, ignoring the distinguished-boundary flag.
pub fn f_region(pt: PointF, tol: f64) -> Region {
    f_classify(pt, tol).region
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{penta_classify, tetra_classify};
    use crate::matrix::{c, re, sample_contraction, sample_unitary, seeded_rng, I};
    use crate::DEFAULT_TOL as TOL;

    fn pf(x: f64, a: f64, p: f64, s: f64) -> PointF {
        PointF::new(re(x), re(a), re(p), re(s))
    }

    #[test]
    fn pi_f_examples() {
        let b = Matrix2::from_real(0.0, 0.5, -0.5, 0.0);
        assert_eq!(pi_f(&b), pf(0.0, 0.0, 0.25, 0.0));
        assert_eq!(pi_f(&Matrix2::identity()), pf(1.0, 1.0, 1.0, 0.0));
        assert_eq!(pi_f(&Matrix2::zero()), pf(0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn classify_examples() {
        let pt = pf(0.0, 0.875, 0.25, 0.0);
        assert_eq!(q_form(&pt), -13.0 / 64.0);
        assert_eq!(f_classify(pt, TOL).region, Region::Outside);

        let pt = pf(0.0, 0.5, 0.0, 1.0);
        assert_eq!(q_form(&pt), -0.25);
        assert_eq!(f_classify(pt, TOL).region, Region::Outside);

        assert_eq!(f_classify(pf(0.0, 0.0, 0.25, 0.0), TOL).region, Region::Interior);
    }

    #[test]
    fn matrix_oracle_examples() {
        let pt = pf(0.0, 0.0, 0.25, 0.0);
        let b = reconstruct_matrix(&pt);
        assert!((operator_norm(&b) - 0.5).abs() < 1e-15);
        assert_eq!(f_classify_matrix_oracle(pt, TOL).region, Region::Interior);
        let v = f_classify_matrix_oracle(pf(1.0, 1.0, 1.0, 0.0), TOL);
        assert_eq!(v.region, Region::ClosureBoundary);
    }

    #[test]
    fn matrix_oracle_agrees_on_box_samples() {
        let mut rng = seeded_rng(31);
        let mut compared = 0;
        for _ in 0..10_000 {
            let pt = sample_box_point(&mut rng);
            let v1 = f_classify(pt, TOL);
            let v2 = f_classify_matrix_oracle(pt, TOL);
            if v1.is_decisive(10.0) && v2.is_decisive(10.0) {
                assert_eq!(v1.region, v2.region, "{pt:?}");
                compared += 1;
            }
        }
        assert!(compared > 9_900);
    }

    #[test]
    fn image_of_open_ball_is_interior() {
        let mut rng = seeded_rng(32);
        for _ in 0..5000 {
            let b = sample_contraction(&mut rng);
            let v = f_classify(pi_f(&b), TOL);
            let norm = operator_norm(&b);
            if norm < 1.0 - 1e-6 {
                assert!(v.in_closure());
            }
            if v.is_decisive(10.0) {
                assert_eq!(v.is_interior(), norm < 1.0);
            }
        }
    }

    #[test]
    fn scale_examples() {
        let out = f_scale(pf(1.0, 1.0, 1.0, 0.0), 0.5).unwrap();
        assert_eq!(out, pf(0.5, 0.5, 0.25, 0.0));
        assert!(f_classify(out, TOL).is_interior());
        let out = f_scale(pf(0.0, 0.0, -1.0, 2.0), 0.5).unwrap();
        assert_eq!(out, pf(0.0, 0.0, -0.25, 1.0));
        assert!(f_classify(out, TOL).is_interior());
        assert!(f_scale(out, 1.0).is_err());
        assert!(f_scale(out, 0.0).is_err());
    }

    /// Oracle: dilating the point by `1/t` divides the matrix over it by `t`,
    /// so the gauge is the norm of that matrix.
    fn norm_gauge(pt: PointF) -> f64 {
        operator_norm(&reconstruct_matrix(&pt))
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(minkowski_gauge(pf(0.0, 0.0, 0.0, 0.0), 1e-12).unwrap(), 0.0);
        let g = minkowski_gauge(pf(0.0, 0.0, -1.0, 2.0), 1e-12).unwrap();
        assert!((g - 1.0).abs() < 1e-10);
        let g = minkowski_gauge(pf(0.0, 0.0, 0.25, 0.0), 1e-12).unwrap();
        assert!((g - 0.5).abs() < 1e-10);
    }

    #[test]
    fn gauge_matches_norm() {
        let mut rng = seeded_rng(33);
        for _ in 0..2000 {
            let pt = sample_box_point(&mut rng);
            let g = minkowski_gauge(pt, 1e-12).unwrap();
            let t = norm_gauge(pt);
            assert!((g - t).abs() < 1e-10 * t.max(1.0), "{g} vs {t}");
            let v = f_classify(pt, 0.0);
            if v.margin.abs() > 1e-9 {
                assert_eq!(g < 1.0, v.margin > 0.0, "{pt:?}");
            }
        }
    }

    #[test]
    fn gauge_is_one_on_distinguished_boundary() {
        let mut rng = seeded_rng(41);
        for _ in 0..1000 {
            let pt = shilov_f_param(sample_shilov_f_param(&mut rng)).unwrap();
            assert!((minkowski_gauge(pt, 1e-12).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn gauge_is_homogeneous() {
        let mut rng = seeded_rng(34);
        for _ in 0..200 {
            let pt = sample_box_point(&mut rng);
            let alpha = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let g = minkowski_gauge(pt, 1e-12).unwrap();
            let h = minkowski_gauge(pt.dilate(alpha), 1e-12).unwrap();
            assert!((h - alpha.norm() * g).abs() < 1e-9 * (1.0 + h), "{h} vs {}", alpha.norm() * g);
        }
    }

    #[test]
    fn swap_examples() {
        let out = f_swap(pf(0.0, 0.0, -0.25, 0.0));
        assert!((out.x - I * 0.5).norm() < 1e-15 || (out.x + I * 0.5).norm() < 1e-15);
        assert!((out.x + out.a).norm() < 1e-15);
        assert_eq!(out.p, re(0.25));
        assert_eq!(out.s, re(0.0));
        assert_eq!(f_swap(pf(0.0, 0.0, 0.0, 0.0)), pf(0.0, 0.0, 0.0, 0.0));
        assert!(f_classify(out, TOL).is_interior());
    }

    #[test]
    fn swap_preserves_membership() {
        let mut rng = seeded_rng(35);
        for _ in 0..1000 {
            let pt = pi_f(&sample_contraction(&mut rng));
            let v = f_classify(pt, TOL);
            let once = f_classify(f_swap(pt), TOL);
            let twice = f_classify(f_swap(f_swap(pt)), TOL);
            if v.is_decisive(10.0) && once.is_decisive(10.0) {
                assert_eq!(v.region, once.region);
            }
            if v.is_decisive(10.0) && twice.is_decisive(10.0) {
                assert_eq!(v.region, twice.region);
            }
        }
    }

    #[test]
    fn relations_examples() {
        let r = f_relations(pf(0.0, 0.0, 0.25, 0.0));
        assert_eq!(r.g2, PointG2::new(re(0.0), re(-0.25)));
        assert!(g2_classify(r.g2, TOL).unwrap().is_interior());
        assert!(tetra_classify(r.tetra, TOL).unwrap().is_interior());
        assert!(penta_classify(r.penta, TOL).unwrap().is_interior());

        // G₂ and pentablock projections inside, the point itself outside;
        // the tetrablock projection is outside too (1 + 1/8 on the left)
        let pt = pf(0.0, 0.875, 0.25, 0.0);
        let r = f_relations(pt);
        assert!(g2_classify(r.g2, TOL).unwrap().is_interior());
        assert!(penta_classify(r.penta, TOL).unwrap().is_interior());
        assert_eq!(tetra_classify(r.tetra, TOL).unwrap().region, Region::Outside);
        assert_eq!(f_classify(pt, TOL).region, Region::Outside);
    }

    #[test]
    fn slices() {
        assert!(f_slice_s_zero(re(0.0), re(0.0), re(0.0)));
        assert!(f_slice_s_zero(re(0.0), re(0.875), re(0.0)));
        assert!(!f_slice_s_zero(re(1.0), re(1.0), re(1.0)));
        assert!(f_slice_xa_zero(re(0.25), re(0.0)).unwrap());
        assert!(!f_slice_xa_zero(re(0.0), re(2.0)).unwrap());
        let mut rng = seeded_rng(36);
        for _ in 0..1000 {
            let p = sample_disc(&mut rng, 1.5);
            let s = sample_disc(&mut rng, 2.5);
            f_slice_xa_zero(p, s).unwrap();
        }
    }

    #[test]
    fn shilov_examples() {
        assert!(shilov_f_test(pf(0.0, 0.0, -1.0, 2.0), TOL));
        assert!(!shilov_f_test(PointF::new(I, re(1.0), I, c(1.0, -1.0)), TOL));
        assert!(shilov_f_test(pf(1.0, -1.0, -1.0, 0.0), TOL));
        let v = f_classify(pf(0.0, 0.0, -1.0, 2.0), TOL);
        assert_eq!(v.region, Region::ClosureBoundary);
        assert_eq!(v.shilov, Some(true));
    }

    #[test]
    fn parametrization_examples() {
        let q = ShilovParamF { theta: 0.0, x2: 1.0, x3: 0.0, x4: 0.0 };
        assert_eq!(shilov_f_param(q).unwrap(), pf(0.0, 0.0, -1.0, 2.0));
        let q = ShilovParamF { theta: 0.0, x2: 0.0, x3: 1.0, x4: 0.0 };
        assert_eq!(shilov_f_param(q).unwrap(), pf(1.0, -1.0, -1.0, 0.0));
        let b = BallParamF { z: re(0.0), w: re(1.0), eta: re(1.0) };
        assert_eq!(shilov_f_from_ball(b).unwrap(), pf(0.0, 0.0, -1.0, 2.0));
        let bad = ShilovParamF { theta: 0.0, x2: 1.0, x3: 0.5, x4: 0.0 };
        assert!(shilov_f_param(bad).is_err());
        let bad = BallParamF { z: re(0.8), w: re(0.8), eta: re(1.0) };
        assert!(shilov_f_from_ball(bad).is_err());
    }

    #[test]
    fn parametrizations_land_on_boundary() {
        let mut rng = seeded_rng(37);
        for _ in 0..2000 {
            let q = sample_shilov_f_param(&mut rng);
            let pt = shilov_f_param(q).unwrap();
            assert!(shilov_f_test(pt, TOL), "{q:?}");
            assert_eq!(f_classify(pt, TOL).region, Region::ClosureBoundary);

            let z = sample_disc(&mut rng, 1.0);
            let w = sample_disc(&mut rng, (1.0 - z.norm_sqr()).sqrt());
            let eta = cis(rng.random_range(0.0..std::f64::consts::TAU));
            let pt = shilov_f_from_ball(BallParamF { z, w, eta }).unwrap();
            assert!(shilov_f_test(pt, TOL));
            assert_eq!(f_classify(pt, TOL).region, Region::ClosureBoundary);
        }
    }

    #[test]
    fn unitary_images_are_on_the_boundary() {
        // f(U) for a unitary U with zero off-diagonal sum is a boundary point
        let mut rng = seeded_rng(38);
        for _ in 0..200 {
            let u = sample_unitary(&mut rng);
            let pt = pi_f(&u);
            assert_eq!(f_classify(pt, TOL).region, Region::ClosureBoundary);
        }
    }

    #[test]
    fn double_cover() {
        let q = ShilovParamF { theta: 0.0, x2: 1.0, x3: 0.0, x4: 0.0 };
        assert!(shilov_f_double_cover(q).unwrap());
        let a = shilov_f_map(re(1.0), 1.0, 0.0, 0.0);
        let b = shilov_f_map(re(-1.0), -1.0, 0.0, 0.0);
        assert_eq!(a, b);
        let mut rng = seeded_rng(39);
        for _ in 0..1000 {
            assert!(shilov_f_double_cover(sample_shilov_f_param(&mut rng)).unwrap());
        }
    }

    #[test]
    fn distance_separates_characterizations() {
        let mut rng = seeded_rng(40);
        for _ in 0..300 {
            let pt = shilov_f_param(sample_shilov_f_param(&mut rng)).unwrap();
            assert!(shilov_f_distance(pt) < 1e-8);
        }
        let off = PointF::new(I, re(1.0), I, c(1.0, -1.0));
        assert!(shilov_f_distance(off) > 1e-3);
        assert!(shilov_f_distance(pf(0.0, 0.0, 0.25, 0.0)) > 0.5);
    }
}
