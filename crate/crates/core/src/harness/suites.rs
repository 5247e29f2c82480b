use std::f64::consts::{PI, TAU};
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Case, Ctx, Failure, SuiteReport};
use crate::classical::{g2_classify, penta_classify, tetra_classify, PointG2, PointPenta, PointTetra};
use crate::domain_f::{
    f_classify, f_classify_matrix_oracle, f_relations, f_scale, f_slice_s_zero, f_slice_xa_zero, f_swap, pi_f,
    pi_hexa, q_form, sample_box_point, sample_shilov_f_param, shilov_f_distance, shilov_f_double_cover,
    shilov_f_from_ball, shilov_f_param, shilov_f_test, BallParamF, PointF,
};
use crate::error::{precondition, Result};
use crate::hexablock::{hexa_classify, hn_classify, hn_matrix, PointH};
use crate::lie::{
    biholo_f, default_shilov_l4_grid, lambda_map, lie_ball_classify, shilov_l4_param, PointCn, TransportedGrid,
};
use crate::matrix::{
    c, cis, fmt_c, gram_report, operator_norm, re, sample_contraction, sample_gaussian, stream_rng,
    with_singular_values, Matrix2, C64, ONE, ZERO,
};
use crate::mu::{
    classify_subspace, f_mu_membership, mu_equals_norm_suite, mu_sample, mu_sandwich_check, norm_witness,
    Structure, StructureKind, SubspaceClass,
};
use crate::verdict::{MembershipVerdict, Region};
use crate::DEFAULT_TOL;

pub(super) fn dispatch(name: &str, ctx: &Ctx) -> Result<(Vec<Failure>, usize)> {
    Ok(match name {
        "lemma21_gram" => lemma21_gram(ctx),
        "prop22_vs_oracle" => prop22_vs_oracle(ctx),
        "prop24_closure" => prop24_closure(ctx),
        "swap_involution" => swap_involution(ctx),
        "lemma25_scaling" => lemma25_scaling(ctx),
        "thm29_projections" => thm29_projections(ctx),
        "prop210_slice" => prop210_slice(ctx),
        "prop211_slice" => prop211_slice(ctx),
        "cor213_closure_projections" => cor213_closure_projections(ctx),
        "prop215_hn" => prop215_hn(ctx),
        "thm32_boundary_transport" => thm32_boundary_transport(ctx),
        "thm33_shilov_equivalences" => thm33_shilov_equivalences(ctx),
        "cor34_necessity" => cor34_necessity(ctx),
        "cor35_double_cover" => cor35_double_cover(ctx),
        "mu_sandwich" => mu_sandwich(ctx),
        "thm41_equivalence" => thm41_equivalence(ctx),
        "cor42_etheta" => cor42_etheta(ctx),
        "final_classification" => final_classification(ctx),
        other => return Err(crate::Error::UnknownSuite(other.to_string())),
    })
}

fn fmt_named(parts: &[(&str, C64)]) -> String {
    parts.iter().map(|(k, v)| format!("{k}={}", fmt_c(*v))).collect::<Vec<_>>().join(";")
}

fn fmt_f(pt: &PointF) -> String {
    fmt_named(&[("x", pt.x), ("a", pt.a), ("p", pt.p), ("s", pt.s)])
}

fn fmt_m(m: &Matrix2) -> String {
    format!("B={m}")
}

fn disc<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> C64 {
    C64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random_range(0.0..TAU))
}

/// Matrix with operator norm spread over `(0, 2)`; one in eight has norm
/// exactly one.
fn mixed_matrix<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let s1 = if rng.random_range(0..8) == 0 { 1.0 } else { rng.random_range(0.0..2.0) };
    let s2 = s1 * rng.random::<f64>();
    with_singular_values(rng, s1, s2)
}

/// Contraction with `‖B‖ ≤ 1`; a quarter of them have norm exactly one.
fn closed_contraction<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let s1 = if rng.random_range(0..4) == 0 { 1.0 } else { rng.random::<f64>() };
    let s2 = s1 * rng.random::<f64>();
    with_singular_values(rng, s1, s2)
}

fn shilov_point<R: Rng + ?Sized>(rng: &mut R) -> PointF {
    shilov_f_param(sample_shilov_f_param(rng)).expect("sampled parameters lie in the ball")
}

fn ball_param<R: Rng + ?Sized>(rng: &mut R) -> BallParamF {
    let (mut z, mut w) = (disc(rng, 1.0), disc(rng, 1.0));
    let r = (z.norm_sqr() + w.norm_sqr()).sqrt();
    // half on the sphere, half inside
    let target = if rng.random::<bool>() { 1.0 } else { rng.random::<f64>().powf(0.25) };
    if r > 0.0 {
        z *= target / r;
        w *= target / r;
    }
    BallParamF { z, w, eta: cis(rng.random_range(0.0..TAU)) }
}

/// A point of `F̄`: matrix image with `‖B‖ ≤ 1` or a distinguished-boundary
/// point.
fn closure_point<R: Rng + ?Sized>(rng: &mut R, i: usize) -> PointF {
    match i % 3 {
        0 => shilov_point(rng),
        _ => pi_f(&closed_contraction(rng)),
    }
}

fn err_case(i: usize, check: &str, inputs: String, e: crate::Error) -> Case {
    Case::fail(i, check, inputs, format!("error: {e}"), "a verdict")
}

/// Folds several sub-checks of one sample into a single case.
struct Checks {
    i: usize,
    failures: Vec<Failure>,
    excluded: bool,
}

impl Checks {
    fn new(i: usize) -> Self {
        Self { i, failures: Vec::new(), excluded: false }
    }

    fn expect(&mut self, ok: bool, check: &str, inputs: &str, observed: impl ToString, expected: impl ToString) {
        if !ok {
            self.failures.push(Failure {
                case: self.i,
                check: check.to_string(),
                inputs: inputs.to_string(),
                observed: observed.to_string(),
                expected: expected.to_string(),
            });
        }
    }

    fn verdict(&mut self, r: Result<MembershipVerdict>, check: &str, inputs: &str) -> Option<MembershipVerdict> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.expect(false, check, inputs, format!("error: {e}"), "a verdict");
                None
            }
        }
    }

    fn done(self) -> Case {
        if !self.failures.is_empty() {
            Case::Fail(self.failures)
        } else if self.excluded {
            Case::Excluded
        } else {
            Case::Pass
        }
    }
}

fn decisive(v: &MembershipVerdict, ctx: &Ctx) -> bool {
    v.margin.abs() > ctx.band()
}

fn lemma21_gram(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let b = if i % 2 == 0 { mixed_matrix(rng) } else { sample_gaussian(rng) };
        let inputs = fmt_m(&b);
        let g = match gram_report(&b) {
            Ok(g) => g,
            Err(e) => return err_case(i, "gram_identity", inputs, e),
        };
        // ‖B‖ < 1 ⟺ det(I − B*B) > 0 and |det B| < 1
        let det_mod = b.det().norm();
        let by_gram = g.det_gram > 0.0 && det_mod < 1.0;
        if (g.norm - 1.0).abs() <= ctx.band() || g.det_gram.abs() <= ctx.band() || (det_mod - 1.0).abs() <= ctx.band() {
            return Case::Excluded;
        }
        if by_gram != (g.norm < 1.0) {
            return Case::fail(i, "contraction_sign", inputs, format!("det_gram={:e}", g.det_gram), format!("norm={}", g.norm));
        }
        Case::Pass
    })
}

fn prop22_vs_oracle(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let pt = if i % 2 == 0 { pi_f(&mixed_matrix(rng)) } else { sample_box_point(rng) };
        let fv = f_classify(pt, ctx.tol);
        let ov = f_classify_matrix_oracle(pt, ctx.tol);
        if !decisive(&fv, ctx) || !decisive(&ov, ctx) {
            return Case::Excluded;
        }
        if fv.region != ov.region {
            return Case::fail(i, "inequalities_vs_norm", fmt_f(&pt), format!("{:?}", fv.region), format!("{:?}", ov.region));
        }
        Case::Pass
    })
}

fn prop24_closure(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        if i % 4 == 0 {
            let pt = shilov_point(rng);
            let v = f_classify(pt, ctx.tol);
            if v.region != Region::ClosureBoundary {
                return Case::fail(i, "shilov_point_on_boundary", fmt_f(&pt), format!("{:?}", v.region), "ClosureBoundary");
            }
            return Case::Pass;
        }
        let b = mixed_matrix(rng);
        let norm = operator_norm(&b);
        let pt = pi_f(&b);
        let v = f_classify(pt, ctx.tol);
        let inputs = fmt_f(&pt);
        if norm <= 1.0 {
            if !v.in_closure() {
                return Case::fail(i, "closure_contains_image", inputs, format!("{:?}", v.region), format!("closure (norm={norm})"));
            }
            Case::Pass
        } else if !decisive(&v, ctx) || norm - 1.0 <= ctx.band() {
            Case::Excluded
        } else if v.in_closure() {
            Case::fail(i, "closure_excludes_image", inputs, format!("{:?}", v.region), format!("Outside (norm={norm})"))
        } else {
            Case::Pass
        }
    })
}

fn swap_involution(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let pt = if i % 2 == 0 { pi_f(&mixed_matrix(rng)) } else { sample_box_point(rng) };
        let inputs = fmt_f(&pt);
        let sw = f_swap(pt);
        let back = f_swap(sw);
        let flipped = PointF::new(pt.a, pt.x, pt.p, pt.s);
        let scale = pt.coords().iter().map(|z| z.norm()).fold(1.0, f64::max).powi(2);
        let err = back.dist(&pt).min(back.dist(&flipped));
        let mut ch = Checks::new(i);
        ch.expect(err <= 1e-12 * scale, "double_swap_returns", &inputs, fmt_f(&back), "the point up to x <-> a");
        let (v, w) = (f_classify(pt, ctx.tol), f_classify(sw, ctx.tol));
        if decisive(&v, ctx) && decisive(&w, ctx) {
            ch.expect(v.region == w.region, "swap_preserves_region", &inputs, format!("{:?}", w.region), format!("{:?}", v.region));
        } else {
            ch.excluded = true;
        }
        ch.done()
    })
}

fn lemma25_scaling(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let pt = closure_point(rng, i);
        let r = rng.random_range(0.01..0.99);
        let inputs = format!("{};r={r:.16e}", fmt_f(&pt));
        let scaled = match f_scale(pt, r) {
            Ok(p) => p,
            Err(e) => return err_case(i, "scale", inputs, e),
        };
        if f_classify_matrix_oracle(scaled, ctx.tol).margin <= ctx.band() {
            return Case::Excluded;
        }
        let v = f_classify(scaled, ctx.tol);
        if v.is_interior() {
            Case::Pass
        } else {
            Case::fail(i, "scaled_closure_point_interior", inputs, format!("{:?} margin={:e}", v.region, v.margin), "Interior")
        }
    })
}

fn thm29_projections(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let pt = pi_f(&sample_contraction(rng));
        let inputs = fmt_f(&pt);
        let v = f_classify(pt, ctx.tol);
        if !decisive(&v, ctx) {
            return Case::Excluded;
        }
        let mut ch = Checks::new(i);
        ch.expect(v.is_interior(), "contraction_image_interior", &inputs, format!("{:?}", v.region), "Interior");
        let rel = f_relations(pt);
        let checks = [
            ("g2_projection", g2_classify(rel.g2, ctx.tol)),
            ("g2_projection_minus_p", g2_classify(PointG2::new(pt.s, -pt.p), ctx.tol)),
            ("tetra_projection", tetra_classify(rel.tetra, ctx.tol)),
            ("penta_projection", penta_classify(rel.penta, ctx.tol)),
        ];
        for (name, r) in checks {
            if let Some(w) = ch.verdict(r, name, &inputs) {
                if !decisive(&w, ctx) {
                    ch.excluded = true;
                } else {
                    ch.expect(w.is_interior(), name, &inputs, format!("{:?} margin={:e}", w.region, w.margin), "Interior");
                }
            }
        }
        ch.done()
    })
}

fn prop210_slice(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let (x1, x2, x3) = if i % 2 == 0 {
            let s1 = rng.random_range(0.0..1.5);
            let s2 = s1 * rng.random::<f64>();
            let b = with_singular_values(rng, s1, s2);
            (b.a11, b.a22, b.det())
        } else {
            (disc(rng, 1.2), disc(rng, 1.2), disc(rng, 1.2))
        };
        let inputs = fmt_named(&[("x1", x1), ("x2", x2), ("x3", x3)]);
        let mut ch = Checks::new(i);
        let t = ch.verdict(tetra_classify(PointTetra::new(x1, x2, x3), ctx.tol), "tetra", &inputs);
        let h = ch.verdict(hexa_classify(PointH::new(ZERO, x1, x2, x3), ctx.tol), "hexa", &inputs);
        let f = f_classify(PointF::new(x1, x2, x3, ZERO), ctx.tol);
        if let (Some(t), Some(h)) = (t, h) {
            if !decisive(&t, ctx) || !decisive(&f, ctx) {
                ch.excluded = true;
            } else {
                let fs = f_slice_s_zero(x1, x2, x3);
                ch.expect(h.is_interior() == t.is_interior(), "hexa_vs_tetra", &inputs, h.is_interior(), t.is_interior());
                ch.expect(fs == t.is_interior(), "f_slice_vs_tetra", &inputs, fs, t.is_interior());
            }
        }
        ch.done()
    })
}

fn prop211_slice(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let (p, s) = if i % 2 == 0 {
            let b = mixed_matrix(rng);
            (-b.det(), b.trace())
        } else {
            (disc(rng, 1.2), disc(rng, 2.4))
        };
        let inputs = fmt_named(&[("p", p), ("s", s)]);
        let fv = f_classify(PointF::new(ZERO, ZERO, p, s), ctx.tol);
        let gv = match g2_classify(PointG2::new(s, -p), ctx.tol) {
            Ok(v) => v,
            Err(e) => return err_case(i, "g2", inputs, e),
        };
        let slice = match f_slice_xa_zero(p, s) {
            Ok(b) => b,
            Err(e) => return err_case(i, "slice_cross_check", inputs, e),
        };
        if !decisive(&fv, ctx) || !decisive(&gv, ctx) {
            return Case::Excluded;
        }
        if slice != gv.is_interior() {
            return Case::fail(i, "slice_vs_g2", inputs, slice, gv.is_interior());
        }
        Case::Pass
    })
}

fn cor213_closure_projections(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let mut ch = Checks::new(i);
        match i % 3 {
            0 => {
                let pt = closure_point(rng, i / 3);
                let inputs = fmt_f(&pt);
                let rel = f_relations(pt);
                let checks = [
                    ("g2_closure", g2_classify(rel.g2, ctx.tol)),
                    ("g2_minus_p_closure", g2_classify(PointG2::new(pt.s, -pt.p), ctx.tol)),
                    ("tetra_closure", tetra_classify(rel.tetra, ctx.tol)),
                    ("penta_closure", penta_classify(rel.penta, ctx.tol)),
                ];
                for (name, r) in checks {
                    if let Some(w) = ch.verdict(r, name, &inputs) {
                        ch.expect(w.in_closure(), name, &inputs, format!("{:?} margin={:e}", w.region, w.margin), "closure");
                    }
                }
            }
            1 => {
                let (x, a, p) = if rng.random::<bool>() {
                    let b = mixed_matrix(rng);
                    (b.a11, b.a22, b.det())
                } else {
                    (disc(rng, 1.3), disc(rng, 1.3), disc(rng, 1.3))
                };
                let inputs = fmt_named(&[("x", x), ("a", a), ("p", p)]);
                if let Some(t) = ch.verdict(tetra_classify(PointTetra::new(x, a, p), ctx.tol), "tetra", &inputs) {
                    let o = f_classify_matrix_oracle(PointF::new(x, a, p, ZERO), ctx.tol);
                    if decisive(&t, ctx) && decisive(&o, ctx) {
                        ch.expect(t.in_closure() == o.in_closure(), "tetra_vs_s_zero_slice", &inputs, t.in_closure(), o.in_closure());
                    } else {
                        ch.excluded = true;
                    }
                }
            }
            _ => {
                let (s, p) = if rng.random::<bool>() {
                    let b = mixed_matrix(rng);
                    (b.trace(), b.det())
                } else {
                    (disc(rng, 2.4), disc(rng, 1.2))
                };
                let inputs = fmt_named(&[("s", s), ("p", p)]);
                if let Some(g) = ch.verdict(g2_classify(PointG2::new(s, p), ctx.tol), "g2", &inputs) {
                    let f = f_classify(PointF::new(ZERO, ZERO, -p, s), ctx.tol);
                    if decisive(&g, ctx) && decisive(&f, ctx) {
                        ch.expect(g.in_closure() == f.in_closure(), "g2_vs_xa_zero_slice", &inputs, g.in_closure(), f.in_closure());
                    } else {
                        ch.excluded = true;
                    }
                }
            }
        }
        ch.done()
    })
}

fn prop215_hn(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let mut ch = Checks::new(i);
        if i % 5 == 0 {
            let (x1, x2) = (disc(rng, 1.3), disc(rng, 1.3));
            let b = Matrix2::new(x1, disc(rng, 2.0), ZERO, x2);
            let pt = pi_hexa(&b);
            let inputs = fmt_named(&[("a", pt.a), ("x1", pt.x1), ("x2", pt.x2), ("x3", pt.x3)]);
            let m = x1.norm().max(x2.norm());
            if (m - 1.0).abs() <= ctx.band() {
                return Case::Excluded;
            }
            let v = hn_classify(pt);
            ch.expect(v.in_open == (m < 1.0), "a_zero_membership", &inputs, v.in_open, m < 1.0);
            ch.expect(!v.in_interior_of_hn, "a_zero_not_interior", &inputs, v.in_interior_of_hn, false);
            return ch.done();
        }
        let b = mixed_matrix(rng);
        let pt = pi_hexa(&b);
        let inputs = fmt_named(&[("a", pt.a), ("x1", pt.x1), ("x2", pt.x2), ("x3", pt.x3)]);
        let norm = operator_norm(&b);
        match hn_matrix(&pt) {
            Some(m) => {
                let err = (m - b).frobenius_sq().sqrt();
                let bound = 1e-12 * (1.0 + b.frobenius_sq()) / pt.a.norm().min(1.0);
                ch.expect(err <= bound, "reconstruction", &inputs, format!("{m}"), format!("{b}"));
            }
            None => ch.expect(false, "reconstruction", &inputs, "none", format!("{b}")),
        }
        if (norm - 1.0).abs() <= ctx.band() {
            ch.excluded = true;
        } else {
            let v = hn_classify(pt);
            ch.expect(v.in_open == (norm < 1.0), "open_membership", &inputs, v.in_open, format!("norm={norm}"));
            ch.expect(v.in_closure == (norm < 1.0), "closure_membership", &inputs, v.in_closure, format!("norm={norm}"));
        }
        ch.done()
    })
}

fn thm32_boundary_transport(ctx: &Ctx) -> (Vec<Failure>, usize) {
    let params = default_shilov_l4_grid(ctx.n);
    let grid = TransportedGrid::new(params.clone());
    ctx.sweep(|i, rng| {
        let mut ch = Checks::new(i);
        let q = params[i % params.len()];
        let inputs = format!("theta={:.16e};x={:?}", q.theta, q.x);
        let pre = PointCn::new(q.x.iter().map(|t| cis(q.theta) * *t).collect());
        match lie_ball_classify(&pre, ctx.tol).and_then(|l| {
            let w = shilov_l4_param(q)?;
            let sq = lambda_map(&pre)?;
            let gap = sq.coords.iter().zip(&w.coords).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
            Ok((l, gap, biholo_f(&w)?))
        }) {
            Ok((l, gap, pt)) => {
                ch.expect(l.shilov == Some(true), "lie_ball_shilov", &inputs, format!("{:?}", l.shilov), "Some(true)");
                ch.expect(gap <= 1e-14, "parametrization_is_squared_image", &inputs, format!("{gap:e}"), "0");
                ch.expect(shilov_f_test(pt, ctx.tol), "image_on_shilov_f", &inputs, fmt_f(&pt), "a point of the boundary");
            }
            Err(e) => ch.expect(false, "transport", &inputs, format!("error: {e}"), "a point"),
        }
        if i % 10 == 0 {
            let target = shilov_point(rng);
            let d = grid.distance(&target);
            ch.expect(d < 1e-3, "grid_covers_shilov_f", &fmt_f(&target), format!("distance={d:e}"), "< 1e-3");
        }
        ch.done()
    })
}

fn thm33_shilov_equivalences(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let mut ch = Checks::new(i);
        let (pt, on_boundary) = match i % 4 {
            0 => (shilov_point(rng), true),
            1 => match shilov_f_from_ball(ball_param(rng)) {
                Ok(p) => (p, true),
                Err(e) => return err_case(i, "ball_parametrization", String::new(), e),
            },
            2 => {
                let base = shilov_point(rng);
                let size = 10f64.powf(rng.random_range(-6.0..-1.0));
                let d = [disc(rng, 1.0), disc(rng, 1.0), disc(rng, 1.0), disc(rng, 1.0)];
                let n = d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let c = base.coords();
                (PointF::from_coords([0, 1, 2, 3].map(|k| c[k] + d[k] * (size / n))), false)
            }
            _ => (pi_f(&sample_contraction(rng)), false),
        };
        let inputs = fmt_f(&pt);
        let test = shilov_f_test(pt, ctx.tol);
        ch.expect(test == on_boundary, "closed_form_test", &inputs, test, on_boundary);
        if on_boundary {
            let v = f_classify(pt, ctx.tol);
            ch.expect(v.shilov == Some(true), "verdict_flag", &inputs, format!("{:?}", v.shilov), "Some(true)");
        }
        if i % 100 < 4 {
            let d = shilov_f_distance(pt);
            if on_boundary {
                ch.expect(d < 1e-8, "near_parametrization", &inputs, format!("{d:e}"), "< 1e-8");
            } else {
                ch.expect(d > ctx.tol, "away_from_parametrization", &inputs, format!("{d:e}"), format!("> {:e}", ctx.tol));
            }
        }
        ch.done()
    })
}

/// `(i, 1, i, 1 − i)`: its projections lie in `bE` and `bΓ`, yet it is not
/// in the distinguished boundary of `F`.
fn necessity_counterpoint() -> PointF {
    PointF::new(c(0.0, 1.0), ONE, c(0.0, 1.0), c(1.0, -1.0))
}

fn necessity_flags(pt: PointF, tol: f64) -> Result<(bool, bool)> {
    let t = tetra_classify(PointTetra::new(pt.x, pt.a, pt.p), tol)?;
    let g = g2_classify(PointG2::new(pt.s, -pt.p), tol)?;
    Ok((t.shilov == Some(true), g.shilov == Some(true)))
}

fn cor34_necessity(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let mut ch = Checks::new(i);
        if i == 0 {
            let pt = necessity_counterpoint();
            let inputs = fmt_f(&pt);
            match necessity_flags(pt, ctx.tol) {
                Ok((be, bg)) => {
                    ch.expect(be && bg, "counterpoint_projections", &inputs, format!("bE={be} bG={bg}"), "both true");
                    let t = shilov_f_test(pt, ctx.tol);
                    ch.expect(!t, "counterpoint_not_shilov", &inputs, t, false);
                }
                Err(e) => ch.expect(false, "counterpoint", &inputs, format!("error: {e}"), "a verdict"),
            }
            return ch.done();
        }
        let pt = if i % 2 == 0 {
            shilov_point(rng)
        } else {
            match shilov_f_from_ball(ball_param(rng)) {
                Ok(p) => p,
                Err(e) => return err_case(i, "ball_parametrization", String::new(), e),
            }
        };
        let inputs = fmt_f(&pt);
        match necessity_flags(pt, ctx.tol) {
            Ok((be, bg)) => {
                ch.expect(be, "tetra_projection_in_bE", &inputs, be, true);
                ch.expect(bg, "g2_projection_in_bG", &inputs, bg, true);
            }
            Err(e) => ch.expect(false, "projections", &inputs, format!("error: {e}"), "a verdict"),
        }
        ch.done()
    })
}

fn cor35_double_cover(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let q = sample_shilov_f_param(rng);
        let inputs = format!("theta={:.16e};x2={:.16e};x3={:.16e};x4={:.16e}", q.theta, q.x2, q.x3, q.x4);
        match shilov_f_double_cover(q) {
            Ok(true) => Case::Pass,
            Ok(false) => Case::fail(i, "antipodal_identification", inputs, false, true),
            Err(e) => err_case(i, "antipodal_identification", inputs, e),
        }
    })
}

fn random_theta(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-PI..PI)
}

fn mu_sandwich(ctx: &Ctx) -> (Vec<Failure>, usize) {
    ctx.sweep(|i, rng| {
        let e = match i % 6 {
            0 => Structure::scalar(),
            1 => Structure::diagonal(),
            2 => Structure::upper_triangular(),
            3 => Structure::lower_triangular(),
            4 => Structure::full(),
            _ => Structure::e_theta(random_theta(rng)),
        };
        let a = mu_sample(ctx.seed, i);
        let inputs = format!("structure={};A={a}", e.name());
        match mu_sandwich_check(&a, &e, ctx.tol) {
            Ok(true) => Case::Pass,
            Ok(false) => Case::fail(i, "spectral_radius_le_mu_le_norm", inputs, false, true),
            Err(e) => err_case(i, "spectral_radius_le_mu_le_norm", inputs, e),
        }
    })
}

/// Points of `F` and of its complement whose membership is compared with
/// `μ_E`-membership: two fixed points outside `F` over which some matrix has
/// small structured singular value for every non-rigid preset, then random
/// matrix images and box points.
fn membership_probe(seed: u64, j: usize) -> PointF {
    match j {
        0 => PointF::new(ZERO, ZERO, ZERO, re(1.5)),
        1 => PointF::new(re(1.5), ZERO, ZERO, ZERO),
        _ => {
            let mut rng = stream_rng(seed ^ 0x6d75, j as u64);
            if j % 2 == 0 {
                pi_f(&mixed_matrix(&mut rng))
            } else {
                sample_box_point(&mut rng)
            }
        }
    }
}

/// Compares `F` with `F_{μ_E}` on `m` probes; returns the disagreements and
/// the number of probes too close to `∂F` to compare.
fn membership_leg(e: &Structure, m: usize, ctx: &Ctx) -> (Vec<(PointF, String)>, usize) {
    let results: Vec<Option<(PointF, String)>> = (0..m)
        .into_par_iter()
        .map(|j| {
            let pt = membership_probe(ctx.seed, j);
            let fv = f_classify_matrix_oracle(pt, DEFAULT_TOL);
            if fv.margin.abs() <= 1e-3 {
                return None;
            }
            match f_mu_membership(pt, e, ctx.tol) {
                Ok(b) if b == fv.is_interior() => Some((pt, String::new())),
                Ok(b) => Some((pt, format!("mu={b} F={}", fv.is_interior()))),
                Err(err) => Some((pt, format!("error: {err}"))),
            }
        })
        .collect();
    let skipped = results.iter().filter(|r| r.is_none()).count();
    (results.into_iter().flatten().filter(|(_, s)| !s.is_empty()).collect(), skipped)
}

fn is_rigid_kind(k: StructureKind) -> bool {
    matches!(k, StructureKind::Full | StructureKind::ETheta(_) | StructureKind::SkewDiag)
}

fn thm41_equivalence(ctx: &Ctx) -> (Vec<Failure>, usize) {
    let structures = [
        Structure::scalar(),
        Structure::diagonal(),
        Structure::upper_triangular(),
        Structure::lower_triangular(),
        Structure::skew_diag(),
        Structure::full(),
        Structure::e_theta(0.0),
        Structure::e_theta(2.1),
    ];
    let m = (ctx.n / 4).max(2);
    let mut failures = Vec::new();
    let mut excluded = 0;
    for (k, e) in structures.iter().enumerate() {
        let report = mu_equals_norm_suite(e, ctx.n, ctx.seed, ctx.tol);
        let norm_leg = report.mismatches.is_empty();
        let rigid_leg = report.rigidity_misses.is_empty();
        let (disagree, skipped) = membership_leg(e, m, ctx);
        excluded += skipped;
        let domain_leg = disagree.is_empty();
        let expected = is_rigid_kind(e.kind());
        let observed = format!("mu_equals_norm={norm_leg} rigid={rigid_leg} same_domain={domain_leg}");
        if norm_leg != expected || rigid_leg != expected || domain_leg != expected {
            let detail = match (report.mismatches.first(), disagree.first()) {
                (Some(mm), _) if norm_leg != expected => format!("A={} mu={} norm={}", mm.matrix, mm.mu, mm.norm),
                (_, Some((pt, why))) if domain_leg != expected => format!("{} {why}", fmt_f(pt)),
                _ => String::new(),
            };
            failures.push(Failure {
                case: k,
                check: "three_way_equivalence".into(),
                inputs: format!("structure={};{detail}", e.name()),
                observed,
                expected: format!("all {expected}"),
            });
        }
    }
    (failures, excluded)
}

fn cor42_etheta(ctx: &Ctx) -> (Vec<Failure>, usize) {
    let mut rng = stream_rng(ctx.seed, u64::MAX - 1);
    let thetas = [0.0, 0.7, 2.1, random_theta(&mut rng)];
    let m = (ctx.n / 4).max(2);
    let mut failures = Vec::new();
    let mut excluded = 0;
    for (k, &theta) in thetas.iter().enumerate() {
        let e = Structure::e_theta(theta);
        let report = mu_equals_norm_suite(&e, ctx.n, ctx.seed, ctx.tol);
        for mm in &report.mismatches {
            failures.push(Failure {
                case: k,
                check: "mu_equals_norm".into(),
                inputs: format!("theta={theta:.16e};A={}", mm.matrix),
                observed: format!("{:.16e}", mm.mu),
                expected: format!("{:.16e}", mm.norm),
            });
        }
        for miss in &report.rigidity_misses {
            failures.push(Failure {
                case: k,
                check: "rigidity".into(),
                inputs: format!(
                    "theta={theta:.16e};u={},{};v={},{}",
                    fmt_c(miss.u[0]),
                    fmt_c(miss.u[1]),
                    fmt_c(miss.v[0]),
                    fmt_c(miss.v[1])
                ),
                observed: format!("{:?}", miss.min_norm),
                expected: "norm one element".into(),
            });
        }
        let (disagree, skipped) = membership_leg(&e, m, ctx);
        excluded += skipped;
        for (pt, why) in disagree {
            failures.push(Failure {
                case: k,
                check: "same_domain".into(),
                inputs: format!("theta={theta:.16e};{}", fmt_f(&pt)),
                observed: why,
                expected: "agreement".into(),
            });
        }
    }
    (failures, excluded)
}

fn wrap_angle(t: f64) -> f64 {
    let w = t.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

/// A basis of `E_θ` mixed by a random invertible change of coordinates.
fn scrambled_e_theta(rng: &mut ChaCha8Rng, theta: f64) -> Structure {
    let base = Structure::e_theta(theta);
    let b = base.basis().to_vec();
    let basis = (0..3)
        .map(|k| {
            let coeffs: Vec<C64> = (0..3).map(|j| if j == k { ONE + disc(rng, 0.5) } else { disc(rng, 0.5) }).collect();
            b.iter().zip(&coeffs).fold(Matrix2::new(ZERO, ZERO, ZERO, ZERO), |acc, (m, c)| acc + m.scale(*c))
        })
        .collect();
    Structure::new(basis, Some(format!("e_theta:{theta}"))).unwrap_or(base)
}

fn non_etheta(rng: &mut ChaCha8Rng, i: usize) -> Result<Structure> {
    match i % 4 {
        0 => Ok(Structure::upper_triangular()),
        1 => Ok(Structure::lower_triangular()),
        _ => {
            let alpha = disc(rng, 2.0) + re(0.1);
            let ratio = if rng.random::<bool>() { rng.random_range(0.1..0.9) } else { rng.random_range(1.1..3.0) };
            let beta = cis(rng.random_range(0.0..TAU)) * (alpha.norm() * ratio);
            let g = Matrix2::new(ZERO, alpha, beta, ZERO);
            Structure::new(vec![Matrix2::diag(ONE, ZERO), Matrix2::diag(ZERO, ONE), g], Some("generator".into()))
        }
    }
}

fn final_classification(ctx: &Ctx) -> (Vec<Failure>, usize) {
    const ANGLE_TOL: f64 = 1e-9;
    ctx.sweep(|i, rng| {
        let mut ch = Checks::new(i);
        let theta = random_theta(rng);
        let e = scrambled_e_theta(rng, theta);
        let inputs = format!("theta={theta:.16e}");
        match classify_subspace(&e, ctx.tol) {
            Ok(SubspaceClass::IsETheta(t)) => {
                let err = wrap_angle(t - theta).abs();
                ch.expect(err <= ANGLE_TOL, "angle_recovered", &inputs, format!("{t:.16e}"), format!("{theta:.16e}"));
            }
            Ok(SubspaceClass::NotETheta) => ch.expect(false, "is_e_theta", &inputs, "NotETheta", "IsETheta"),
            Err(e) => ch.expect(false, "is_e_theta", &inputs, format!("error: {e}"), "IsETheta"),
        }
        match non_etheta(rng, i) {
            Ok(other) => {
                let inputs = format!("structure={:?}", other.basis());
                match classify_subspace(&other, ctx.tol) {
                    Ok(SubspaceClass::NotETheta) => {}
                    Ok(c) => ch.expect(false, "not_e_theta", &inputs, format!("{c:?}"), "NotETheta"),
                    Err(e) => ch.expect(false, "not_e_theta", &inputs, format!("error: {e}"), "NotETheta"),
                }
                match norm_witness(&other, ctx.tol) {
                    Ok(Some((_, r))) => {
                        ch.expect((r.value - 1.0).abs() > ctx.tol, "witness_mu_differs", &inputs, r.value, "not 1")
                    }
                    Ok(None) => ch.expect(false, "witness_exists", &inputs, "none", "E12 or E21"),
                    Err(e) => ch.expect(false, "witness_exists", &inputs, format!("error: {e}"), "E12 or E21"),
                }
            }
            Err(e) => ch.expect(false, "generator_structure", &inputs, format!("error: {e}"), "a structure"),
        }
        ch.done()
    })
}

/// Closed-form checks of the in-text counterexamples, one set per `r`.
pub fn run_counterexamples(r_grid: &[f64]) -> Result<SuiteReport> {
    let start = Instant::now();
    let tol = DEFAULT_TOL;
    let mut failures = Vec::new();
    let mut push = |case: usize, check: &str, inputs: String, observed: String, expected: String| {
        failures.push(Failure { case, check: check.into(), inputs, observed, expected });
    };
    for (k, &r) in r_grid.iter().enumerate() {
        if !(r > 0.0 && r < 1.0) {
            return Err(precondition(format!("grid value {r} is not in (0, 1)")));
        }
        let r2 = r * r;
        let tag = format!("r={r:.16e}");

        // projections inside while the point is not
        let pt = PointF::new(ZERO, re(1.0 - r2 / 2.0), re(r2), ZERO);
        let pv = penta_classify(PointPenta::new(pt.a, pt.s, -pt.p), tol)?;
        let gv = g2_classify(PointG2::new(pt.s, -pt.p), tol)?;
        let fv = f_classify(pt, tol);
        let q = q_form(&pt);
        let q_expected = (1.0 - r2).powi(2) - (1.0 - r2 / 2.0).powi(2);
        if !pv.is_interior() {
            push(k, "projections_inside/penta", tag.clone(), format!("{:?}", pv.region), "Interior".into());
        }
        if !gv.is_interior() {
            push(k, "projections_inside/g2", tag.clone(), format!("{:?}", gv.region), "Interior".into());
        }
        if fv.region != Region::Outside {
            push(k, "projections_inside/f", tag.clone(), format!("{:?}", fv.region), "Outside".into());
        }
        if (q - q_expected).abs() > 1e-12 {
            push(k, "projections_inside/q", tag.clone(), format!("{q:.16e}"), format!("{q_expected:.16e}"));
        }

        // family with interior projections
        let fam = PointF::new(ZERO, re(1.0 - r2 / 2.0), ZERO, re(r2));
        let rel = f_relations(fam);
        let fam_checks = [
            ("closure_family/penta", penta_classify(rel.penta, tol)?),
            ("closure_family/g2", g2_classify(rel.g2, tol)?),
            ("closure_family/tetra", tetra_classify(rel.tetra, tol)?),
        ];
        for (name, v) in fam_checks {
            if !v.is_interior() {
                push(k, name, tag.clone(), format!("{:?}", v.region), "Interior".into());
            }
        }

        // a scaled diagonal point lies in F but not in H_N
        let d = PointF::new(ZERO, ZERO, re(r2), ZERO);
        let dv = f_classify(d, tol);
        if !dv.is_interior() {
            push(k, "f_not_in_hn/f", tag.clone(), format!("{:?}", dv.region), "Interior".into());
        }
        let hv = hn_classify(PointH::new(ZERO, ZERO, ZERO, re(r2)));
        if hv.in_open {
            push(k, "f_not_in_hn/hn", tag.clone(), "in H_N".into(), "not in H_N".into());
        }
    }

    let case = r_grid.len();
    // limit of the family: outside the closure, projections in their closures
    let lim = PointF::new(ZERO, re(0.5), ZERO, ONE);
    let inputs = fmt_f(&lim);
    let q = q_form(&lim);
    if (q + 0.25).abs() > 1e-12 {
        push(case, "limit/q", inputs.clone(), format!("{q:.16e}"), "-0.25".into());
    }
    let lv = f_classify(lim, tol);
    if lv.region != Region::Outside {
        push(case, "limit/f", inputs.clone(), format!("{:?}", lv.region), "Outside".into());
    }
    let rel = f_relations(lim);
    let lim_checks = [
        ("limit/penta", penta_classify(rel.penta, tol)?),
        ("limit/g2", g2_classify(rel.g2, tol)?),
        ("limit/tetra", tetra_classify(rel.tetra, tol)?),
    ];
    for (name, v) in lim_checks {
        if !v.in_closure() {
            push(case, name, inputs.clone(), format!("{:?}", v.region), "closure".into());
        }
    }

    let cp = necessity_counterpoint();
    let inputs = fmt_f(&cp);
    let (be, bg) = necessity_flags(cp, tol)?;
    if !(be && bg) {
        push(case + 1, "necessity/projections", inputs.clone(), format!("bE={be} bG={bg}"), "both true".into());
    }
    if shilov_f_test(cp, tol) {
        push(case + 1, "necessity/shilov_f", inputs, "true".into(), "false".into());
    }

    failures.sort_by(|a, b| a.case.cmp(&b.case).then_with(|| a.check.cmp(&b.check)));
    Ok(SuiteReport {
        suite: "counterexamples".into(),
        n_samples: r_grid.len(),
        seed: 0,
        tol,
        failures,
        excluded: 0,
        elapsed: start.elapsed(),
    })
}
