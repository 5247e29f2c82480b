//! The hexablock `H`, defined through the supremum of a family of
//! fractional maps over the bidisc, and the normed hexablock `H_N`.

use serde::{Deserialize, Serialize};

use crate::classical::{tetra_classify, PointTetra};
use crate::domain_f::{f_classify, PointF};
use crate::error::{precondition, Error, Result};
use crate::matrix::{operator_norm, Matrix2, C64};
use crate::optimize::{polar_grid, polydisc_sup};
use crate::verdict::{MembershipVerdict, Region};
use crate::DEFAULT_TOL;

/// `(a, x₁, x₂, x₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointH {
    pub a: C64,
    pub x1: C64,
    pub x2: C64,
    pub x3: C64,
}

impl PointH {
    pub fn new(a: C64, x1: C64, x2: C64, x3: C64) -> Self {
        Self { a, x1, x2, x3 }
    }

    pub fn tetra(&self) -> PointTetra {
        PointTetra::new(self.x1, self.x2, self.x3)
    }
}

/// A point `(z₁, z₂)` of the open bidisc.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiProbe {
    pub z1: C64,
    pub z2: C64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnVerdict {
    pub in_open: bool,
    pub in_closure: bool,
    pub in_interior_of_hn: bool,
}

/// Radii and angles of the start grid used by [`psi_sup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PsiGrid {
    pub radii: usize,
    pub angles: usize,
    pub starts: usize,
}

impl Default for PsiGrid {
    fn default() -> Self {
        Self { radii: 32, angles: 64, starts: 5 }
    }
}

fn psi_raw(z1: C64, z2: C64, pt: &PointH) -> (C64, C64) {
    let weight = ((1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr())).max(0.0).sqrt();
    let den = 1.0 - pt.x1 * z1 - pt.x2 * z2 + pt.x3 * z1 * z2;
    (pt.a * weight, den)
}

/// `Ψ = a√((1 − |z₁|²)(1 − |z₂|²)) / (1 − x₁z₁ − x₂z₂ + x₃z₁z₂)`.
pub fn psi_eval(q: PsiProbe, pt: PointH) -> Result<C64> {
    if !(q.z1.norm() < 1.0 && q.z2.norm() < 1.0) {
        return Err(precondition("probe is not in the open bidisc"));
    }
    if !tetra_classify(pt.tetra(), DEFAULT_TOL)?.is_interior() {
        return Err(precondition("(x1, x2, x3) is not in the tetrablock"));
    }
    let (num, den) = psi_raw(q.z1, q.z2, &pt);
    if den.norm() < 1e-14 {
        return Err(Error::DenominatorNearZero(den.norm()));
    }
    Ok(num / den)
}

/// `sup |Ψ|` over the open bidisc with the default grid.
pub fn psi_sup(pt: PointH, tol: f64) -> Result<f64> {
    psi_sup_with(pt, tol, PsiGrid::default())
}

/// `sup |Ψ|` with a configurable start grid. Radii are `(i/n)²`, denser
/// near the origin.
pub fn psi_sup_with(pt: PointH, tol: f64, grid: PsiGrid) -> Result<f64> {
    if !tetra_classify(pt.tetra(), DEFAULT_TOL)?.is_interior() {
        return Err(precondition("(x1, x2, x3) is not in the tetrablock"));
    }
    if pt.a == C64::new(0.0, 0.0) {
        return Ok(0.0);
    }
    let n = grid.radii as f64;
    let nodes = polar_grid(grid.radii, grid.angles, |i| (i as f64 / n).powi(2));
    let unit = PointH { a: C64::new(1.0, 0.0), ..pt };
    let profile = |z: &[C64]| {
        let (num, den) = psi_raw(z[0], z[1], &unit);
        num.norm() / den.norm()
    };
    let (sup, _) = polydisc_sup(profile, 2, &nodes, grid.starts, tol)?;
    Ok(pt.a.norm() * sup)
}

/// Membership in `H`.
///
/// For `a = 0` this is tetrablock membership. Otherwise the supremum is
/// compared with 1; a supremum within `tol` of 1 is reported as
/// `ClosureBoundary`.
pub fn hexa_classify(pt: PointH, tol: f64) -> Result<MembershipVerdict> {
    let t = tetra_classify(pt.tetra(), tol)?;
    let v = if pt.a == C64::new(0.0, 0.0) || t.region == Region::Outside {
        MembershipVerdict { shilov: None, ..t }
    } else if t.region == Region::ClosureBoundary {
        MembershipVerdict { shilov: None, ..t }
    } else {
        let slack = 1.0 - psi_sup(pt, tol)?;
        MembershipVerdict::from_margin(slack.min(t.margin), tol)
    };
    Ok(v.with_shilov(shilov_h_test(pt, tol)))
}

/// True when the verdict comes from a supremum that landed inside the
/// `±tol` band rather than from an exact test.
pub fn hexa_is_indeterminate(pt: PointH, v: &MembershipVerdict) -> bool {
    v.region == Region::ClosureBoundary
        && pt.a != C64::new(0.0, 0.0)
        && tetra_classify(pt.tetra(), v.tol).map(|t| t.is_interior()).unwrap_or(false)
}

/// The unique matrix `[[x₁, (x₁x₂ − x₃)/a], [a, x₂]]` over a point with
/// `a ≠ 0`.
pub fn hn_matrix(pt: &PointH) -> Option<Matrix2> {
    if pt.a == C64::new(0.0, 0.0) {
        return None;
    }
    Some(Matrix2::new(pt.x1, (pt.x1 * pt.x2 - pt.x3) / pt.a, pt.a, pt.x2))
}

/// Membership in `H_N`, its closure and its interior.
pub fn hn_classify(pt: PointH) -> HnVerdict {
    let zero = C64::new(0.0, 0.0);
    if pt.a != zero {
        let lift = PointF::new(pt.x1, pt.x2, pt.x3, pt.a + (pt.x1 * pt.x2 - pt.x3) / pt.a);
        let in_open = f_classify(lift, DEFAULT_TOL).is_interior();
        let in_closure = hn_matrix(&pt).is_some_and(|m| operator_norm(&m) <= 1.0 + DEFAULT_TOL);
        HnVerdict { in_open, in_closure, in_interior_of_hn: in_open }
    } else {
        let factored = (pt.x3 - pt.x1 * pt.x2).norm() <= 1e-12;
        let in_open = factored
            && tetra_classify(pt.tetra(), DEFAULT_TOL).map(|v| v.is_interior()).unwrap_or(false);
        let in_closure = factored && pt.x1.norm().max(pt.x2.norm()) <= 1.0 + DEFAULT_TOL;
        HnVerdict { in_open, in_closure, in_interior_of_hn: false }
    }
}

/// `bH`: points of the closure of `H_N` with `|x₃| = 1`.
pub fn shilov_h_test(pt: PointH, tol: f64) -> bool {
    hn_classify(pt).in_closure && (pt.x3.norm() - 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::tetra_classify;
    use crate::domain_f::pi_hexa;
    use crate::matrix::{c, re, sample_contraction, sample_unitary, seeded_rng, with_singular_values};
    use crate::DEFAULT_TOL as TOL;
    use rand::Rng;

    fn ph(a: f64, x1: f64, x2: f64, x3: f64) -> PointH {
        PointH::new(re(a), re(x1), re(x2), re(x3))
    }

    /// `sup_{z₂} √(1 − |z₂|²)/|α − βz₂| = 1/√(|α|² − |β|²)` reduces the
    /// supremum to one disc, scanned densely.
    fn reduced_sup(pt: PointH) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..600 {
            let r = i as f64 / 600.0;
            for j in 0..720 {
                let z1 = C64::from_polar(r, j as f64 * std::f64::consts::TAU / 720.0);
                let alpha = 1.0 - pt.x1 * z1;
                let beta = pt.x2 - pt.x3 * z1;
                let v = (1.0 - r * r).sqrt() / (alpha.norm_sqr() - beta.norm_sqr()).sqrt();
                best = best.max(v);
            }
        }
        pt.a.norm() * best
    }

    #[test]
    fn psi_eval_examples() {
        let q = PsiProbe { z1: re(0.0), z2: re(0.0) };
        assert_eq!(psi_eval(q, ph(0.5, 0.0, 0.0, 0.0)).unwrap(), re(0.5));
        let q = PsiProbe { z1: c(0.3, 0.2), z2: c(-0.1, 0.5) };
        assert_eq!(psi_eval(q, ph(0.0, 0.2, 0.1, 0.0)).unwrap(), re(0.0));
        let pt = ph(0.7, 0.2, 0.3, 0.05);
        let mut last = f64::INFINITY;
        for k in 1..8 {
            let z1 = re(1.0 - 10f64.powi(-k));
            let v = psi_eval(PsiProbe { z1, z2: re(0.1) }, pt).unwrap().norm();
            assert!(v < last);
            last = v;
        }
        assert!(last < 1e-3);
        let q = PsiProbe { z1: re(1.0), z2: re(0.0) };
        assert!(psi_eval(q, pt).is_err());
        assert!(psi_eval(PsiProbe { z1: re(0.0), z2: re(0.0) }, ph(0.5, 1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn psi_sup_examples() {
        let v = psi_sup(ph(0.5, 0.0, 0.0, 0.0), 1e-10).unwrap();
        assert!((v - 0.5).abs() < 1e-9);
        assert_eq!(psi_sup(ph(0.0, 0.3, 0.2, 0.1), 1e-10).unwrap(), 0.0);
        let pt = PointH::new(c(0.2, 0.1), c(0.3, -0.2), c(0.1, 0.4), c(0.05, 0.1));
        let one = psi_sup(pt, 1e-10).unwrap();
        let two = psi_sup(PointH { a: pt.a * 2.0, ..pt }, 1e-10).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-9);
    }

    #[test]
    fn psi_sup_matches_reduced_oracle() {
        let mut rng = seeded_rng(57);
        for _ in 0..3 {
            let m = sample_contraction(&mut rng);
            let pt = PointH::new(c(0.4, -0.3), m.a11, m.a22, m.det());
            let v = psi_sup(pt, 1e-10).unwrap();
            let o = reduced_sup(pt);
            assert!(v >= o - 1e-9 && v - o < 1e-4, "{v} vs {o}");
        }
    }

    #[test]
    fn classify_examples() {
        let v = hexa_classify(ph(0.0, 0.0, 0.875, 0.0), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);
        let v = hexa_classify(ph(0.5, 0.0, 0.0, 0.0), TOL).unwrap();
        assert_eq!(v.region, Region::Interior);
        assert!((v.margin - 0.5).abs() < 1e-9);
        let v = hexa_classify(ph(2.0, 0.0, 0.0, 0.0), TOL).unwrap();
        assert_eq!(v.region, Region::Outside);
        let v = hexa_classify(ph(0.5, 2.0, 0.0, 0.0), TOL).unwrap();
        assert_eq!(v.region, Region::Outside);
    }

    #[test]
    fn hn_examples() {
        let v = hn_classify(ph(0.0, 0.0, 0.0, 0.25));
        assert!(!v.in_open && !v.in_closure);
        let (x1, x2) = (c(0.3, 0.1), c(-0.2, 0.4));
        let v = hn_classify(PointH::new(re(0.0), x1, x2, x1 * x2));
        assert!(v.in_open && v.in_closure && !v.in_interior_of_hn);
        let mut rng = seeded_rng(51);
        for _ in 0..2000 {
            let a = sample_contraction(&mut rng);
            let v = hn_classify(pi_hexa(&a));
            if operator_norm(&a) < 1.0 - 1e-6 {
                assert!(v.in_open && v.in_closure);
            }
        }
    }

    #[test]
    fn hn_open_agrees_with_reconstruction() {
        let mut rng = seeded_rng(52);
        for _ in 0..5000 {
            let s1 = rng.random_range(0.0..1.6);
            let s2 = rng.random_range(0.0..s1);
            let a = with_singular_values(&mut rng, s1, s2);
            let pt = pi_hexa(&a);
            let m = hn_matrix(&pt).unwrap();
            assert!((operator_norm(&m) - s1).abs() < 1e-9);
            if (s1 - 1.0).abs() > 1e-6 {
                assert_eq!(hn_classify(pt).in_open, s1 < 1.0);
            }
        }
    }

    #[test]
    fn closed_ball_images_lie_in_closure() {
        let mut rng = seeded_rng(53);
        for _ in 0..2000 {
            let s2 = rng.random_range(0.0..1.0);
            let a = with_singular_values(&mut rng, 1.0, s2);
            assert!(hn_classify(pi_hexa(&a)).in_closure);
        }
        // a = 0 completions
        let v = hn_classify(PointH::new(re(0.0), re(1.0), c(0.0, 0.5), c(0.0, 0.5)));
        assert!(v.in_closure && !v.in_open);
    }

    #[test]
    fn shilov_examples() {
        let mut rng = seeded_rng(54);
        for _ in 0..500 {
            let u = sample_unitary(&mut rng);
            assert!(shilov_h_test(pi_hexa(&u), TOL));
        }
        assert!(!shilov_h_test(ph(0.0, 0.0, 0.0, 0.25), TOL));
        assert!(!shilov_h_test(ph(0.5, 0.0, 0.0, 0.0), TOL));
    }

    #[test]
    fn normed_points_are_in_hexablock() {
        let mut rng = seeded_rng(55);
        for _ in 0..12 {
            let a = sample_contraction(&mut rng);
            let pt = pi_hexa(&a);
            assert!(hn_classify(pt).in_open);
            let v = hexa_classify(pt, TOL).unwrap();
            assert!(v.in_closure(), "{pt:?} {v:?}");
            if v.is_decisive(10.0) {
                assert!(v.is_interior());
            }
        }
    }

    #[test]
    fn slice_agrees_with_tetrablock() {
        let mut rng = seeded_rng(56);
        for _ in 0..1000 {
            let x = [0; 3].map(|_| c(rng.random_range(-1.2..1.2), rng.random_range(-1.2..1.2)));
            let pt = PointH::new(re(0.0), x[0], x[1], x[2]);
            let h = hexa_classify(pt, TOL).unwrap().is_interior();
            let t = tetra_classify(pt.tetra(), TOL).unwrap().is_interior();
            let f = crate::domain_f::f_slice_s_zero(x[0], x[1], x[2]);
            assert_eq!(h, t);
            assert_eq!(t, f);
        }
    }
}
