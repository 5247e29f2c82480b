//! Complex 2×2 matrix arithmetic.
//!
//! Everything here is closed form: singular values come from the eigenvalues
//! of the Hermitian 2×2 matrix `A*A`, eigenvalues from the characteristic
//! quadratic. No iteration is involved, so results are deterministic bit for
//! bit on a given platform.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::DEFAULT_TOL;

/// Complex scalar used for every coordinate in the crate.
pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Unit complex number `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

#[inline]
pub fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Roots of `t² − s·t + p = 0`, ordered lexicographically on `(re, im)`.
///
/// The larger-modulus root is formed without cancellation and the other is
/// recovered from the product, so both satisfy `λ₁ + λ₂ = s` and `λ₁λ₂ = p`
/// to working precision.
pub fn quadratic_roots(s: C64, p: C64) -> (C64, C64) {
    let disc = (s * s - 4.0 * p).sqrt();
    // pick the sign that avoids cancellation in s ± disc
    let big = if (s + disc).norm_sqr() >= (s - disc).norm_sqr() {
        (s + disc) * 0.5
    } else {
        (s - disc) * 0.5
    };
    let small = if big == ZERO { ZERO } else { p / big };
    order_pair(big, small)
}

pub(crate) fn order_pair(u: C64, v: C64) -> (C64, C64) {
    if (u.re, u.im) <= (v.re, v.im) {
        (u, v)
    } else {
        (v, u)
    }
}

/// A 2×2 complex matrix `[[a11, a12], [a21, a22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a11: C64,
    pub a12: C64,
    pub a21: C64,
    pub a22: C64,
}

impl Matrix2 {
    pub const fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self::new(re(a11), re(a12), re(a21), re(a22))
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn diag(d1: C64, d2: C64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    /// Matrix unit `E₁₂ = [[0, 1], [0, 0]]`.
    pub const fn e12() -> Self {
        Self::new(ZERO, ONE, ZERO, ZERO)
    }

    /// Matrix unit `E₂₁ = [[0, 0], [1, 0]]`.
    pub const fn e21() -> Self {
        Self::new(ZERO, ZERO, ONE, ZERO)
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn from_entries(e: [C64; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|&z| is_finite(z))
    }

    pub fn det(&self) -> C64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> C64 {
        self.a11 + self.a22
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.a11.conj(),
            self.a21.conj(),
            self.a12.conj(),
            self.a22.conj(),
        )
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.a11 * k, self.a12 * k, self.a21 * k, self.a22 * k)
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        ]
    }

    /// Entries of the Hermitian matrix `A*A` as `(h11, h22, h12)`.
    fn gram_entries(&self) -> (f64, f64, C64) {
        let h11 = self.a11.norm_sqr() + self.a21.norm_sqr();
        let h22 = self.a12.norm_sqr() + self.a22.norm_sqr();
        let h12 = self.a11.conj() * self.a12 + self.a21.conj() * self.a22;
        (h11, h22, h12)
    }

    /// Singular values `(σ₁, σ₂)` with `σ₁ ≥ σ₂ ≥ 0`.
    pub fn singular_values(&self) -> (f64, f64) {
        let (h11, h22, h12) = self.gram_entries();
        let half_gap = 0.5 * (h11 - h22);
        let radius = (half_gap * half_gap + h12.norm_sqr()).sqrt();
        let top = 0.5 * (h11 + h22) + radius;
        let s1 = top.max(0.0).sqrt();
        let s2 = if s1 > 0.0 { self.det().norm() / s1 } else { 0.0 };
        (s1, s2.min(s1))
    }

    /// Unit right and left singular vectors `(v₁, u₁)` for `σ₁`, so that
    /// `A v₁ = σ₁ u₁`. `None` for the zero matrix.
    pub fn top_singular_pair(&self) -> Option<([C64; 2], [C64; 2])> {
        let (s1, _) = self.singular_values();
        if s1 == 0.0 {
            return None;
        }
        let (h11, h22, h12) = self.gram_entries();
        let lam = s1 * s1;
        // two candidate eigenvectors of A*A for λ; keep the better conditioned
        let c1 = [h12, re(lam - h11)];
        let c2 = [re(lam - h22), h12.conj()];
        let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
        let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
        let (v, n) = if n1 >= n2 { (c1, n1) } else { (c2, n2) };
        let v = if n < 1e-300 {
            // A*A is a multiple of the identity; any unit vector works
            [ONE, ZERO]
        } else {
            let k = 1.0 / n.sqrt();
            [v[0] * k, v[1] * k]
        };
        let av = self.apply(v);
        let u = [av[0] / s1, av[1] / s1];
        Some((v, u))
    }

    /// Eigenvalues ordered lexicographically.
    pub fn eigenvalues(&self) -> (C64, C64) {
        quadratic_roots(self.trace(), self.det())
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 + o.a11,
            self.a12 + o.a12,
            self.a21 + o.a21,
            self.a22 + o.a22,
        )
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 - o.a11,
            self.a12 - o.a12,
            self.a21 - o.a21,
            self.a22 - o.a22,
        )
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;
    fn neg(self) -> Matrix2 {
        self.scale(-ONE)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<C64> for Matrix2 {
    type Output = Matrix2;
    fn mul(self, k: C64) -> Matrix2 {
        self.scale(k)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_c(self.a11),
            fmt_c(self.a12),
            fmt_c(self.a21),
            fmt_c(self.a22)
        )
    }
}

/// Complex number formatted as `a+bi` with 17 significant digits.
pub fn fmt_c(z: C64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

/// Largest singular value.
pub fn operator_norm(a: &Matrix2) -> f64 {
    a.singular_values().0
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &Matrix2) -> f64 {
    let (l1, l2) = a.eigenvalues();
    l1.norm().max(l2.norm())
}

/// `det(I − B*B)` and `tr(I − B*B)` together with `‖B‖`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub det_gram: f64,
    pub trace_gram: f64,
    pub norm: f64,
}

/// Right-hand side of the Gram determinant identity, written in the
/// coordinates `(x, a, p, s) = (b11, b22, det B, b12 + b21)`:
/// `1 − |a|² − |x|² + |p|² − |s|²/2 − |s² − 4(ax − p)|/2`.
pub fn gram_closed_form(x: C64, a: C64, p: C64, s: C64) -> f64 {
    1.0 - a.norm_sqr() - x.norm_sqr() + p.norm_sqr()
        - 0.5 * s.norm_sqr()
        - 0.5 * (s * s - 4.0 * (a * x - p)).norm()
}

pub fn gram_report(b: &Matrix2) -> Result<GramReport> {
    let (h11, h22, h12) = b.gram_entries();
    let direct = (1.0 - h11) * (1.0 - h22) - h12.norm_sqr();
    let closed = gram_closed_form(b.a11, b.a22, b.det(), b.a12 + b.a21);
    // both sides are quartic in the entries
    let scale = (1.0 + b.frobenius_sq()).powi(2);
    if (direct - closed).abs() > 1e-10 * scale {
        return Err(Error::FormulaMismatch {
            context: "det(I - B*B)",
            lhs: direct,
            rhs: closed,
        });
    }
    Ok(GramReport {
        det_gram: direct,
        trace_gram: 2.0 - h11 - h22,
        norm: operator_norm(b),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// `‖B‖ < 1`.
    Strict,
    /// `‖B‖ ≤ 1`.
    NonStrict,
}

/// Decides `‖B‖ < 1` (or `≤ 1`) from the sign of `det(I − B*B)` alone,
/// which is valid once `|det B|` is known to be at most one.
pub fn contraction_test(b: &Matrix2, mode: Strictness) -> Result<bool> {
    let det_mod = b.det().norm();
    if det_mod > 1.0 + DEFAULT_TOL {
        return Err(precondition(format!(
            "contraction test needs |det B| <= 1, got {det_mod}"
        )));
    }
    let g = gram_report(b)?;
    Ok(match mode {
        Strictness::Strict => det_mod < 1.0 && g.det_gram > DEFAULT_TOL,
        Strictness::NonStrict => g.det_gram >= -DEFAULT_TOL,
    })
}

fn gaussian_c<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    c(x, y)
}

/// Matrix with independent standard complex Gaussian entries.
pub fn sample_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    Matrix2::new(
        gaussian_c(rng),
        gaussian_c(rng),
        gaussian_c(rng),
        gaussian_c(rng),
    )
}

/// Unitary from Gram–Schmidt on two complex Gaussian columns; the first
/// pivot is rotated to the positive real axis.
pub fn sample_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    loop {
        let g1 = [gaussian_c(rng), gaussian_c(rng)];
        let g2 = [gaussian_c(rng), gaussian_c(rng)];
        let n1 = (g1[0].norm_sqr() + g1[1].norm_sqr()).sqrt();
        if n1 < 1e-8 {
            continue;
        }
        let phase = if g1[0].norm() > 0.0 {
            g1[0].conj() / g1[0].norm()
        } else {
            ONE
        };
        let u1 = [C64::new(g1[0].norm() / n1, 0.0), g1[1] * phase / n1];
        let proj = u1[0].conj() * g2[0] + u1[1].conj() * g2[1];
        let w = [g2[0] - proj * u1[0], g2[1] - proj * u1[1]];
        let n2 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        if n2 < 1e-8 {
            continue;
        }
        let u2 = [w[0] / n2, w[1] / n2];
        return Matrix2::new(u1[0], u2[0], u1[1], u2[1]);
    }
}

/// `U·diag(σ₁, σ₂)·V*` with the given singular values.
pub fn with_singular_values<R: Rng + ?Sized>(rng: &mut R, s1: f64, s2: f64) -> Matrix2 {
    let u = sample_unitary(rng);
    let v = sample_unitary(rng);
    u * Matrix2::diag(re(s1), re(s2)) * v.adjoint()
}

/// Contraction `U·diag(σ₁, σ₂)·V*` with `σᵢ` uniform on `[0, 1)`.
pub fn sample_contraction<R: Rng + ?Sized>(rng: &mut R) -> Matrix2 {
    let s1: f64 = rng.random();
    let s2: f64 = rng.random();
    with_singular_values(rng, s1, s2)
}

/// Deterministic per-seed generator shared by every sampler in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `index` of the generator for `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_contraction(seed: u64) -> Matrix2 {
    sample_contraction(&mut seeded_rng(seed))
}

pub fn random_unitary(seed: u64) -> Matrix2 {
    sample_unitary(&mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: power iteration on A*A.
    fn power_norm(a: &Matrix2) -> f64 {
        let h = a.adjoint() * *a;
        let mut v = [c(0.6, 0.1), c(-0.3, 0.7)];
        let mut lam = 0.0;
        for _ in 0..5000 {
            let w = h.apply(v);
            let n = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
            if n == 0.0 {
                return 0.0;
            }
            v = [w[0] / n, w[1] / n];
            lam = n;
        }
        lam.sqrt()
    }

    /// Independent oracle: companion matrix power iteration with deflation
    /// replaced by a brute-force root polish (Newton on the characteristic
    /// polynomial from many starts).
    fn companion_radius(a: &Matrix2) -> f64 {
        let (t, d) = (a.trace(), a.det());
        let f = |z: C64| z * z - t * z + d;
        let df = |z: C64| 2.0 * z - t;
        let mut best: f64 = 0.0;
        for k in 0..16 {
            let mut z = cis(k as f64 * 0.4) * (1.0 + k as f64 * 0.3);
            for _ in 0..200 {
                let dz = df(z);
                if dz.norm() < 1e-300 {
                    break;
                }
                z -= f(z) / dz;
            }
            if f(z).norm() < 1e-9 * (1.0 + t.norm_sqr() + d.norm()) {
                best = best.max(z.norm());
            }
        }
        best
    }

    #[test]
    fn norm_examples() {
        assert_eq!(operator_norm(&Matrix2::identity()), 1.0);
        let rot = Matrix2::from_real(0.0, 0.5, -0.5, 0.0);
        assert!((operator_norm(&rot) - 0.5).abs() < 1e-15);
        assert_eq!(operator_norm(&Matrix2::zero()), 0.0);
    }

    #[test]
    fn norm_matches_power_iteration() {
        let mut rng = seeded_rng(11);
        for _ in 0..200 {
            let a = sample_gaussian(&mut rng);
            let (s1, s2) = a.singular_values();
            // power iteration converges slowly when σ₁ ≈ σ₂
            if (s1 - s2) / s1 < 1e-3 {
                continue;
            }
            assert!((operator_norm(&a) - power_norm(&a)).abs() < 1e-12 * s1.max(1.0));
        }
    }

    #[test]
    fn spectral_radius_examples() {
        let d = Matrix2::diag(re(0.5), re(0.25));
        assert_eq!(spectral_radius(&d), 0.5);
        assert_eq!(spectral_radius(&Matrix2::e12()), 0.0);
        let mut rng = seeded_rng(12);
        for _ in 0..200 {
            let a = sample_gaussian(&mut rng);
            let r = spectral_radius(&a);
            assert!((r - companion_radius(&a)).abs() < 1e-9 * r.max(1.0));
        }
    }

    #[test]
    fn quadratic_roots_symmetric_functions() {
        let mut rng = seeded_rng(13);
        for _ in 0..500 {
            let s = gaussian_c(&mut rng);
            let p = gaussian_c(&mut rng);
            let (l1, l2) = quadratic_roots(s, p);
            assert!((l1 + l2 - s).norm() < 1e-12 * (1.0 + s.norm()));
            assert!((l1 * l2 - p).norm() < 1e-12 * (1.0 + p.norm()));
            assert!((l1.re, l1.im) <= (l2.re, l2.im));
        }
    }

    #[test]
    fn gram_report_examples() {
        let z = gram_report(&Matrix2::zero()).unwrap();
        assert_eq!((z.det_gram, z.trace_gram, z.norm), (1.0, 2.0, 0.0));

        // (x, a, p, s) = (0, 7/8, 1/4, 0): off-diagonal pair with
        // b12 + b21 = 0 and b12·b21 = ax − p = −1/4.
        let b = Matrix2::from_real(0.0, 0.5, -0.5, 0.875);
        assert!((b.det() - re(0.25)).norm() < 1e-15);
        let g = gram_report(&b).unwrap();
        assert!((g.det_gram + 13.0 / 64.0).abs() < 1e-14);

        let u = random_unitary(5);
        let g = gram_report(&u).unwrap();
        assert!(g.det_gram.abs() < 1e-14 && g.trace_gram.abs() < 1e-14);
    }

    #[test]
    fn trace_identity_under_det_bound() {
        let mut rng = seeded_rng(14);
        for _ in 0..1000 {
            let b = sample_contraction(&mut rng);
            let g = gram_report(&b).unwrap();
            let p = b.det().norm_sqr();
            assert!((g.trace_gram - (g.det_gram + 1.0 - p)).abs() < 1e-10);
        }
    }

    #[test]
    fn contraction_test_examples() {
        let half = Matrix2::diag(re(0.5), re(0.5));
        assert!(contraction_test(&half, Strictness::Strict).unwrap());
        let u = random_unitary(3);
        assert!(contraction_test(&u, Strictness::NonStrict).unwrap());
        assert!(!contraction_test(&u, Strictness::Strict).unwrap());
        let big = Matrix2::diag(re(2.0), re(2.0));
        assert!(matches!(
            contraction_test(&big, Strictness::NonStrict),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn contraction_test_matches_norm() {
        let mut rng = seeded_rng(15);
        let mut checked = 0;
        while checked < 10_000 {
            let b = sample_gaussian(&mut rng).scale(re(0.6));
            if b.det().norm() >= 1.0 {
                continue;
            }
            let n = operator_norm(&b);
            if (n - 1.0).abs() < 1e-6 {
                continue;
            }
            checked += 1;
            assert_eq!(
                contraction_test(&b, Strictness::Strict).unwrap(),
                n < 1.0,
                "{b}"
            );
        }
    }

    #[test]
    fn random_contraction_properties() {
        assert!(operator_norm(&random_contraction(0)) < 1.0);
        assert_eq!(random_contraction(0), random_contraction(0));
        let mut bins = [0usize; 10];
        for seed in 0..1000 {
            let n = operator_norm(&random_contraction(seed));
            assert!(n < 1.0);
            bins[((n * 10.0) as usize).min(9)] += 1;
        }
        // max of two uniforms: every decile above the first is populated
        assert!(bins[1..].iter().all(|&b| b > 0), "{bins:?}");
    }

    #[test]
    fn unitary_is_unitary() {
        for seed in 0..50 {
            let u = random_unitary(seed);
            let e = u.adjoint() * u - Matrix2::identity();
            assert!(e.frobenius_sq() < 1e-28);
            assert!(u.a11.im == 0.0 && u.a11.re >= 0.0);
        }
    }

    #[test]
    fn top_singular_pair_attains_norm() {
        let mut rng = seeded_rng(16);
        for _ in 0..200 {
            let a = sample_gaussian(&mut rng);
            let (v, u) = a.top_singular_pair().unwrap();
            let av = a.apply(v);
            let s1 = operator_norm(&a);
            assert!((av[0] - u[0] * s1).norm() < 1e-10 * s1);
            assert!((av[1] - u[1] * s1).norm() < 1e-10 * s1);
        }
    }
}
