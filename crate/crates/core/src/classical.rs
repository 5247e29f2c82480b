//! The symmetrized bidisc `G₂`, the tetrablock `E` and the pentablock `P`,
//! with their closures and distinguished boundaries.

use serde::{Deserialize, Serialize};

use crate::domain_f::{f_classify, PointF};
use crate::error::{precondition, Error, Result};
use crate::matrix::{quadratic_roots, C64};
use crate::optimize::{polar_grid, polydisc_sup};
use crate::verdict::{min_slack, strictly_opposed, MembershipVerdict, Region};

/// Point `(s, p)` of `ℂ²`; `G₂` is the image of `(z₁, z₂) ↦ (z₁ + z₂, z₁z₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointG2 {
    pub s: C64,
    pub p: C64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointTetra {
    pub x1: C64,
    pub x2: C64,
    pub x3: C64,
}

/// Point `(a, s, p)`; `P` is the image of `A ↦ (a₂₁, tr A, det A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointPenta {
    pub a: C64,
    pub s: C64,
    pub p: C64,
}

impl PointG2 {
    pub fn new(s: C64, p: C64) -> Self {
        Self { s, p }
    }

    /// Symmetrization of a pair of roots.
    pub fn from_roots(l1: C64, l2: C64) -> Self {
        Self::new(l1 + l2, l1 * l2)
    }
}

impl PointTetra {
    pub fn new(x1: C64, x2: C64, x3: C64) -> Self {
        Self { x1, x2, x3 }
    }
}

impl PointPenta {
    pub fn new(a: C64, s: C64, p: C64) -> Self {
        Self { a, s, p }
    }
}

/// Roots `(λ₁, λ₂)` of `t² − st + p`, lexicographically ordered.
pub fn g2_roots(pt: PointG2) -> (C64, C64) {
    quadratic_roots(pt.s, pt.p)
}

fn g2_slacks(pt: PointG2) -> (f64, f64, f64) {
    let (s, p) = (pt.s, pt.p);
    let skew = (s - s.conj() * p).norm();
    let cond2 = (1.0 - p.norm_sqr()) - skew;
    let cond3 = 4.0 - s.norm_sqr() - 2.0 * skew - (s * s - 4.0 * p).norm();
    let radius = 2.0 - s.norm();
    (cond2, cond3, radius)
}

/// Membership in `G₂` / `Γ`, with the distinguished boundary `bΓ` flag.
///
/// Interior iff `|s − s̄p| < 1 − |p|²`; closure adds `|s| ≤ 2` to the
/// non-strict form. The second criterion `2|s − s̄p| + |s² − 4p| < 4 − |s|²`
/// is evaluated alongside and must not contradict the first.
pub fn g2_classify(pt: PointG2, tol: f64) -> Result<MembershipVerdict> {
    let (cond2, cond3, radius) = g2_slacks(pt);
    if strictly_opposed(cond2, cond3, tol) {
        return Err(Error::CriteriaDisagree {
            domain: "G2",
            detail: format!("|s - s̄p| test {cond2:e} vs discriminant test {cond3:e}"),
        });
    }
    let v = MembershipVerdict::from_margin(min_slack(&[cond2, radius]), tol);
    let (s, p) = (pt.s, pt.p);
    let on_torus = (p.norm() - 1.0).abs() <= tol
        && (s - s.conj() * p).norm() <= tol
        && s.norm() <= 2.0 + tol;
    Ok(v.with_shilov(on_torus))
}

fn tetra_slacks(pt: PointTetra, tol: f64) -> (f64, f64) {
    let PointTetra { x1, x2, x3 } = pt;
    let defect = (x1 * x2 - x3).norm();
    let cond2 = 1.0 - x1.norm_sqr() - (x2 - x1.conj() * x3).norm() - defect;
    let mut cond4 = vec![
        1.0 - x1.norm_sqr() - x2.norm_sqr() + x3.norm_sqr() - 2.0 * defect,
        1.0 - x3.norm(),
    ];
    if defect <= tol {
        cond4.push(2.0 - x1.norm() - x2.norm());
    }
    (cond2, min_slack(&cond4))
}

/// Membership in `E` / `Ē`, with the `bE` flag.
///
/// Interior iff `|x₁|² + |x₂ − x̄₁x₃| + |x₁x₂ − x₃| < 1`. The determinant
/// form is cross-checked. Closure is decided through the slice
/// `(x₁, x₂, x₃, 0) ∈ F̄`.
pub fn tetra_classify(pt: PointTetra, tol: f64) -> Result<MembershipVerdict> {
    let (cond2, cond4) = tetra_slacks(pt, tol);
    if strictly_opposed(cond2, cond4, tol) {
        return Err(Error::CriteriaDisagree {
            domain: "E",
            detail: format!("norm test {cond2:e} vs determinant test {cond4:e}"),
        });
    }
    let v = if cond2 > tol {
        MembershipVerdict::from_margin(cond2, tol)
    } else {
        let slice = f_classify(PointF::new(pt.x1, pt.x2, pt.x3, C64::new(0.0, 0.0)), tol);
        if slice.region == Region::Outside {
            MembershipVerdict {
                region: Region::Outside,
                shilov: None,
                margin: slice.margin,
                tol,
            }
        } else {
            MembershipVerdict {
                region: Region::ClosureBoundary,
                shilov: None,
                margin: cond2,
                tol,
            }
        }
    };
    let PointTetra { x1, x2, x3 } = pt;
    let distinguished = (x1 - x2.conj() * x3).norm() <= tol
        && (x3.norm() - 1.0).abs() <= tol
        && x2.norm() <= 1.0 + tol;
    Ok(v.with_shilov(distinguished))
}

/// `½|1 − λ̄₂λ₁| + ½√((1 − |λ₁|²)(1 − |λ₂|²))`, the radius bound on `|a|`.
pub fn penta_radius(s: C64, p: C64) -> f64 {
    let (l1, l2) = quadratic_roots(s, p);
    let hyper = ((1.0 - l1.norm_sqr()) * (1.0 - l2.norm_sqr())).max(0.0);
    0.5 * (1.0 - l2.conj() * l1).norm() + 0.5 * hyper.sqrt()
}

/// Membership in `P` / `P̄`, with the `bP` flag.
///
/// Interior iff `(s, p) ∈ G₂` and `|a|` is below [`penta_radius`]. For
/// interior base points the supremum criterion [`penta_sup`] is evaluated
/// too and must not contradict the radius test.
pub fn penta_classify(pt: PointPenta, tol: f64) -> Result<MembershipVerdict> {
    let base = g2_classify(PointG2::new(pt.s, pt.p), tol)?;
    let slack_a = penta_radius(pt.s, pt.p) - pt.a.norm();
    let v = MembershipVerdict::from_margin(min_slack(&[base.margin, slack_a]), tol);
    if base.region == Region::Interior {
        let sup = penta_sup(pt, tol)?;
        if strictly_opposed(1.0 - sup, slack_a, tol) {
            return Err(Error::CriteriaDisagree {
                domain: "P",
                detail: format!("supremum {sup} vs radius slack {slack_a:e}"),
            });
        }
    }
    let on_boundary = base.shilov == Some(true)
        && (pt.a.norm_sqr() + pt.s.norm_sqr() / 4.0 - 1.0).abs() <= tol;
    Ok(v.with_shilov(on_boundary))
}

/// `sup_{z ∈ 𝔻} |a(1 − |z|²) / (1 − sz + pz²)|`.
///
/// 64 radii × 128 angles of start points, then coordinate ascent from the
/// five best.
pub fn penta_sup(pt: PointPenta, tol: f64) -> Result<f64> {
    let base = g2_classify(PointG2::new(pt.s, pt.p), crate::DEFAULT_TOL)?;
    if base.region == Region::Outside {
        return Err(precondition("penta_sup needs (s, p) in the closed symmetrized bidisc"));
    }
    let modulus = pt.a.norm();
    if modulus == 0.0 {
        return Ok(0.0);
    }
    let (s, p) = (pt.s, pt.p);
    let grid = polar_grid(64, 128, |i| i as f64 / 64.0);
    let profile = |z: &[C64]| {
        let z = z[0];
        (1.0 - z.norm_sqr()) / (1.0 - s * z + p * z * z).norm()
    };
    let (sup, _) = polydisc_sup(profile, 1, &grid, 5, tol)?;
    Ok(modulus * sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{cis, re, sample_contraction, seeded_rng};
    use crate::DEFAULT_TOL as TOL;

    #[test]
    fn g2_examples() {
        let v = g2_classify(PointG2::new(re(0.0), re(0.0)), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);

        let v = g2_classify(PointG2::new(re(2.0), re(1.0)), TOL).unwrap();
        assert_eq!(v.region, Region::ClosureBoundary);
        assert_eq!(v.shilov, Some(true));

        let v = g2_classify(PointG2::new(re(0.0), re(-0.25)), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);

        // s = 3, p = 1 satisfies s = s̄p with |p| = 1 but has a root outside
        let v = g2_classify(PointG2::new(re(3.0), re(1.0)), TOL).unwrap();
        assert_eq!(v.region, Region::Outside);
    }

    #[test]
    fn g2_roots_examples() {
        let (l1, l2) = g2_roots(PointG2::new(re(0.0), re(-0.25)));
        assert_eq!((l1, l2), (re(-0.5), re(0.5)));
        let (l1, l2) = g2_roots(PointG2::new(re(2.0), re(1.0)));
        assert!((l1 - re(1.0)).norm() < 1e-7 && (l2 - re(1.0)).norm() < 1e-7);
    }

    #[test]
    fn g2_roots_round_trip() {
        let mut rng = seeded_rng(21);
        for _ in 0..1000 {
            let m = sample_contraction(&mut rng);
            let (u, v) = (m.a11, m.a22);
            let (l1, l2) = g2_roots(PointG2::from_roots(u, v));
            let direct = (l1 - u).norm() + (l2 - v).norm();
            let swapped = (l1 - v).norm() + (l2 - u).norm();
            assert!(direct.min(swapped) < 1e-7, "{u} {v} -> {l1} {l2}");
        }
    }

    #[test]
    fn torus_parametrization_is_distinguished() {
        for i in 0..40 {
            for j in 0..40 {
                let beta = cis(i as f64 * 0.157);
                let p = cis(j as f64 * 0.157 + 0.01);
                let pt = PointG2::new(beta + beta.conj() * p, p);
                let v = g2_classify(pt, TOL).unwrap();
                assert_eq!(v.shilov, Some(true), "{pt:?}");
            }
        }
    }

    #[test]
    fn tetra_examples() {
        let v = tetra_classify(PointTetra::new(re(0.0), re(0.0), re(0.0)), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);
        let v = tetra_classify(PointTetra::new(re(1.0), re(1.0), re(1.0)), TOL).unwrap();
        assert_eq!(v.region, Region::ClosureBoundary);
        assert_eq!(v.shilov, Some(true));
        let v = tetra_classify(PointTetra::new(re(0.0), re(0.875), re(0.0)), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);
    }

    #[test]
    fn tetra_determinant_form_needs_unit_x3() {
        // x₁x₂ ≈ x₃ with |x₁| > 1: the bare determinant inequality holds here
        let pt = PointTetra::new(re(1.5), re(1.5), re(2.25 + 1e-6));
        let v = tetra_classify(pt, TOL).unwrap();
        assert_eq!(v.region, Region::Outside);
    }

    #[test]
    fn penta_examples() {
        let v = penta_classify(PointPenta::new(re(0.0), re(0.0), re(0.0)), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);
        let v = penta_classify(PointPenta::new(re(0.875), re(0.0), re(-0.25)), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);
        let v = penta_classify(PointPenta::new(re(1.0), re(0.0), re(1.0)), TOL).unwrap();
        assert_eq!(v.region, Region::ClosureBoundary);
        assert_eq!(v.shilov, Some(true));
    }

    #[test]
    fn penta_radius_at_symmetric_roots() {
        // λ = (r, −r): ½(1 + r²) + ½(1 − r²) = 1
        for r in [0.1, 0.3, 0.5, 0.9] {
            assert!((penta_radius(re(0.0), re(-r * r)) - 1.0).abs() < 1e-15);
        }
    }

    /// Dense brute-force supremum on a fine polar mesh.
    fn brute_sup(pt: PointPenta) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..400 {
            let r = i as f64 / 400.0;
            for j in 0..720 {
                let z = C64::from_polar(r, j as f64 * std::f64::consts::TAU / 720.0);
                let v = pt.a.norm() * (1.0 - z.norm_sqr())
                    / (re(1.0) - pt.s * z + pt.p * z * z).norm();
                best = best.max(v);
            }
        }
        best
    }

    #[test]
    fn penta_sup_examples() {
        let v = penta_sup(PointPenta::new(re(0.5), re(0.0), re(0.0)), 1e-10).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        let v = penta_sup(PointPenta::new(re(0.0), re(0.3), re(0.1)), 1e-10).unwrap();
        assert_eq!(v, 0.0);
        let v = penta_sup(PointPenta::new(re(0.875), re(0.0), re(-0.25)), 1e-10).unwrap();
        assert!(v < 1.0);
    }

    #[test]
    fn penta_sup_dominates_brute_force() {
        let mut rng = seeded_rng(23);
        for _ in 0..3 {
            let m = sample_contraction(&mut rng);
            let pt = PointPenta::new(m.a21, m.trace(), m.det());
            let v = penta_sup(pt, 1e-10).unwrap();
            let b = brute_sup(pt);
            assert!(v >= b - 1e-12 && v - b < 1e-4, "{v} vs {b}");
        }
    }

    #[test]
    fn penta_sup_outside_gamma_is_rejected() {
        let r = penta_sup(PointPenta::new(re(0.5), re(3.0), re(0.0)), 1e-8);
        assert!(matches!(r, Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn matrix_images_are_interior() {
        let mut rng = seeded_rng(22);
        for _ in 0..2000 {
            let a = sample_contraction(&mut rng);
            let g = g2_classify(PointG2::new(a.trace(), a.det()), TOL).unwrap();
            let t = tetra_classify(PointTetra::new(a.a11, a.a22, a.det()), TOL).unwrap();
            if crate::matrix::operator_norm(&a) < 1.0 - 1e-6 {
                assert!(g.in_closure() && t.in_closure());
                if g.is_decisive(10.0) {
                    assert!(g.is_interior());
                }
                if t.is_decisive(10.0) {
                    assert!(t.is_interior());
                }
            }
        }
    }
}
