//! Small derivative-free optimizers used by the supremum, μ and distance
//! computations. All are deterministic.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::C64;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (hi - lo) > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coordinate-wise golden-section ascent.
///
/// Each round line-searches every coordinate over `[xᵢ − h, xᵢ + h]`. The
/// bracket half-width `h` shrinks whenever a round gains less than `ftol`;
/// the search ends once `h < xtol`.
pub fn coordinate_ascent<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    h0: f64,
    xtol: f64,
    ftol: f64,
    max_rounds: usize,
) -> Result<(Vec<f64>, f64)> {
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut h = h0;
    for _ in 0..max_rounds {
        if h < xtol {
            return Ok((x, fx));
        }
        let start = fx;
        for i in 0..x.len() {
            let xi = x[i];
            let mut probe = x.clone();
            let (best, fbest) = golden_max(
                |t| {
                    probe[i] = t;
                    f(&probe)
                },
                xi - h,
                xi + h,
                h * 1e-3,
            );
            if fbest > fx {
                x[i] = best;
                fx = fbest;
            }
        }
        if fx - start < ftol {
            h *= 0.5;
        }
    }
    Err(Error::OptimizerNoConverge(format!(
        "coordinate ascent still moving after {max_rounds} rounds (h = {h:e})"
    )))
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub converged: bool,
}

/// Nelder–Mead simplex minimization with an axis-aligned initial simplex.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    ftol: f64,
    max_iter: usize,
) -> Minimum {
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut converged = false;
    for _ in 0..max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = (values[n] - values[0]).abs();
        if spread <= ftol * (values[0].abs() + ftol) {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };

        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < values[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            let (xc, fc) = if fr < values[n] {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                // shrink toward the best vertex
                let best = simplex[0].clone();
                for i in 1..=n {
                    for (x, b) in simplex[i].iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    Minimum {
        x: simplex[best].clone(),
        fx: values[best],
        converged,
    }
}

/// Nelder–Mead restarted from its own optimum until two consecutive runs
/// agree, which repairs premature simplex collapse.
pub fn nelder_mead_restarted<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    step: f64,
    ftol: f64,
    max_iter: usize,
    restarts: usize,
) -> Minimum {
    let mut best = nelder_mead(&mut f, x0, step, ftol, max_iter);
    let mut step = step;
    for _ in 0..restarts {
        step *= 0.5;
        let next = nelder_mead(&mut f, &best.x, step, ftol, max_iter);
        let gain = best.fx - next.fx;
        let done = gain <= ftol * (best.fx.abs() + ftol);
        if next.fx < best.fx {
            best = next;
        }
        if done {
            break;
        }
    }
    best
}

/// Solves the square system `m·x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` if the matrix is numerically singular.
pub fn solve_dense(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let k = m[row][col] / m[col][col];
            if k != 0.0 {
                for j in col..n {
                    m[row][j] -= k * m[col][j];
                }
                b[row] -= k * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|j| m[row][j] * x[j]).sum();
        x[row] = (b[row] - tail) / m[row][row];
    }
    Some(x)
}

/// Levenberg–Marquardt least squares with a forward-difference Jacobian.
/// Returns the parameters and the final residual norm.
pub fn levenberg_marquardt<F: FnMut(&[f64]) -> Vec<f64>>(
    mut residual: F,
    x0: &[f64],
    max_iter: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut r = residual(&x);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut lambda = 1e-3;
    for _ in 0..max_iter {
        if cost < 1e-30 {
            break;
        }
        let m = r.len();
        let mut jac = vec![vec![0.0; n]; m];
        for j in 0..n {
            let h = 1e-7 * (1.0 + x[j].abs());
            let mut xp = x.clone();
            xp[j] += h;
            let rp = residual(&xp);
            for i in 0..m {
                jac[i][j] = (rp[i] - r[i]) / h;
            }
        }
        let mut jtj = vec![vec![0.0; n]; n];
        let mut jtr = vec![0.0; n];
        for i in 0..m {
            for a in 0..n {
                jtr[a] += jac[i][a] * r[i];
                for b in 0..n {
                    jtj[a][b] += jac[i][a] * jac[i][b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut sys = jtj.clone();
            for (a, row) in sys.iter_mut().enumerate() {
                row[a] += lambda * (jtj[a][a] + 1e-12);
            }
            let rhs: Vec<f64> = jtr.iter().map(|v| -v).collect();
            if let Some(delta) = solve_dense(sys, rhs) {
                let xn: Vec<f64> = x.iter().zip(&delta).map(|(a, d)| a + d).collect();
                let rn = residual(&xn);
                let cn: f64 = rn.iter().map(|v| v * v).sum();
                if cn < cost {
                    x = xn;
                    r = rn;
                    let gain = cost - cn;
                    cost = cn;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = gain > 1e-32;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    (x, cost.sqrt())
}

/// Polar sampling of the unit disc: `n_radii` radii from `radius(i)` and
/// `n_angles` equally spaced angles.
pub fn polar_grid(n_radii: usize, n_angles: usize, radius: impl Fn(usize) -> f64) -> Vec<C64> {
    let mut pts = Vec::with_capacity(n_radii * n_angles);
    for i in 0..n_radii {
        let r = radius(i);
        if r == 0.0 {
            pts.push(C64::new(0.0, 0.0));
            continue;
        }
        for j in 0..n_angles {
            let t = std::f64::consts::TAU * j as f64 / n_angles as f64;
            pts.push(C64::from_polar(r, t));
        }
    }
    pts
}

fn clamp_to_disc(z: C64) -> C64 {
    const EDGE: f64 = 1.0 - 1e-15;
    let n = z.norm();
    if n >= EDGE {
        z * (EDGE / n)
    } else {
        z
    }
}

/// Supremum of `f` over the open polydisc `𝔻ᵈ` (`d = discs`).
///
/// Every `d`-tuple of `grid` is evaluated, then coordinate ascent refines
/// the `starts` best tuples in real Cartesian coordinates. Points are
/// clamped into the disc during refinement.
pub fn polydisc_sup<F>(f: F, discs: usize, grid: &[C64], starts: usize, tol: f64) -> Result<(f64, Vec<C64>)>
where
    F: Fn(&[C64]) -> f64 + Sync,
{
    assert!(discs == 1 || discs == 2, "only the disc and the bidisc are supported");
    let keep = starts.max(1);
    let merge = |mut a: Vec<(f64, usize)>, b: Vec<(f64, usize)>| {
        a.extend(b);
        a.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
        a.truncate(keep);
        a
    };
    let n = grid.len();
    let best: Vec<(f64, usize)> = if discs == 1 {
        let all: Vec<(f64, usize)> = grid.iter().enumerate().map(|(i, &z)| (f(&[z]), i)).collect();
        merge(all, Vec::new())
    } else {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut local: Vec<(f64, usize)> = Vec::with_capacity(keep + 1);
                let mut floor = f64::NEG_INFINITY;
                for j in 0..n {
                    let v = f(&[grid[i], grid[j]]);
                    if local.len() < keep || v > floor {
                        local.push((v, i * n + j));
                        local.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
                        local.truncate(keep);
                        floor = local.last().map_or(f64::NEG_INFINITY, |e| e.0);
                    }
                }
                local
            })
            .reduce(Vec::new, merge)
    };

    let decode = |idx: usize| -> Vec<C64> {
        if discs == 1 {
            vec![grid[idx]]
        } else {
            vec![grid[idx / n], grid[idx % n]]
        }
    };
    let to_point = |x: &[f64]| -> Vec<C64> {
        x.chunks(2).map(|w| clamp_to_disc(C64::new(w[0], w[1]))).collect()
    };

    let mut sup = f64::NEG_INFINITY;
    let mut arg = Vec::new();
    for &(v0, idx) in &best {
        let z0 = decode(idx);
        let x0: Vec<f64> = z0.iter().flat_map(|z| [z.re, z.im]).collect();
        let (x, v) = coordinate_ascent(|x| f(&to_point(x)), &x0, 0.05, 1e-9, tol * 1e-3, 5000)?;
        let (v, z) = if v >= v0 { (v, to_point(&x)) } else { (v0, z0) };
        if v > sup {
            sup = v;
            arg = z;
        }
    }
    Ok((sup, arg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_max(|t| -(t - 0.3) * (t - 0.3), -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(fx.abs() < 1e-15);
    }

    #[test]
    fn coordinate_ascent_on_coupled_quadratic() {
        let f = |x: &[f64]| -((x[0] - 0.2).powi(2) + (x[0] + x[1]).powi(2) * 3.0);
        let (x, _) = coordinate_ascent(f, &[0.0, 0.0], 0.5, 1e-10, 1e-16, 10_000).unwrap();
        assert!((x[0] - 0.2).abs() < 1e-6 && (x[1] + 0.2).abs() < 1e-6);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = nelder_mead_restarted(f, &[-1.2, 1.0], 0.5, 1e-16, 5000, 5);
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn lm_fits_circle_point() {
        let target = [0.6, 0.8];
        let (x, res) = levenberg_marquardt(
            |p| vec![p[0].cos() - target[0], p[0].sin() - target[1]],
            &[0.1],
            100,
        );
        assert!(res < 1e-12);
        assert!((x[0] - 0.8f64.atan2(0.6)).abs() < 1e-9);
    }

    #[test]
    fn solve_dense_small_system() {
        let x = solve_dense(vec![vec![2.0, 1.0], vec![1.0, 3.0]], vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
        assert!(solve_dense(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 1.0]).is_none());
    }
}
