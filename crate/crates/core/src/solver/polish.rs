//! Newton refinement on the active-set optimality system.
//!
//! At a Chebyshev center `x` with active points `I` there are weights
//! `μ ≥ 0`, `Σμ = 1`, with `Σ μ_i ∇‖x − a_i‖ = 0` and `‖x − a_i‖ = t` for
//! `i ∈ I`. Where the norm is smooth this square system is solved by Newton's
//! method with a finite-difference Jacobian of the gradients. The refined
//! point is only kept if it lowers the true objective, so kinks in the norm
//! can only cost time.

use nalgebra::{DMatrix, DVector};

use crate::norms::Norm;
use crate::sets;
use crate::vecops::{self, Vector};

use super::bounds::min_norm_weights;

const MAX_NEWTON: usize = 40;
const ACTIVE_BANDS: [f64; 4] = [1e-8, 1e-6, 1e-4, 1e-2];

/// Returns `(x, F(x), newton iterations)` when an improvement was found.
pub(super) fn polish<N: Norm>(norm: &N, pts: &[Vector], x0: &[f64], f0: f64) -> Option<(Vector, f64, usize)> {
    if f0 <= 0.0 {
        return None;
    }
    let dists: Vec<f64> = pts.iter().map(|a| norm.dist(x0, a)).collect();
    let mut best: Option<(Vector, f64)> = None;
    let mut total = 0;
    let mut tried: Vec<Vec<usize>> = Vec::new();
    for band in ACTIVE_BANDS {
        let active: Vec<usize> = (0..pts.len()).filter(|&i| dists[i] >= f0 * (1.0 - band)).collect();
        if active.len() < 2 || tried.contains(&active) {
            continue;
        }
        tried.push(active.clone());
        let (x, its) = active_set_newton(norm, pts, x0, f0, active);
        total += its;
        if let Some(x) = x {
            let f = sets::outer_radius(norm, pts, &x);
            let bar = best.as_ref().map_or(f0, |b| b.1);
            if f < bar {
                best = Some((x, f));
            }
        }
    }
    best.map(|(x, f)| (x, f, total))
}

fn active_set_newton<N: Norm>(
    norm: &N,
    pts: &[Vector],
    x0: &[f64],
    f0: f64,
    mut active: Vec<usize>,
) -> (Option<Vector>, usize) {
    let mut total = 0;
    while active.len() >= 2 {
        let (sol, its) = newton(norm, pts, x0, f0, &active);
        total += its;
        let Some((x, mu)) = sol else { return (None, total) };
        // a clearly negative multiplier means that point should not be active
        let (worst, wmu) = mu.iter().enumerate().fold((0, f64::INFINITY), |b, (i, m)| if *m < b.1 { (i, *m) } else { b });
        if wmu >= -1e-9 {
            return (Some(x), total);
        }
        active.remove(worst);
    }
    (None, total)
}

fn newton<N: Norm>(norm: &N, pts: &[Vector], x0: &[f64], f0: f64, active: &[usize]) -> (Option<(Vector, Vec<f64>)>, usize) {
    let n = x0.len();
    let k = active.len();
    let m = n + 1 + k;
    let grads: Vec<Vector> = active.iter().map(|&i| norm.subgradient(&vecops::sub(x0, &pts[i]))).collect();
    let mu0 = min_norm_weights(&grads);
    let mut z = DVector::zeros(m);
    for j in 0..n {
        z[j] = x0[j];
    }
    z[n] = f0;
    for i in 0..k {
        z[n + 1 + i] = mu0[i];
    }

    let residual = |z: &DVector<f64>| -> DVector<f64> {
        let x: Vec<f64> = z.rows(0, n).iter().copied().collect();
        let mut r = DVector::zeros(m);
        for (row, &i) in active.iter().enumerate() {
            let u = vecops::sub(&x, &pts[i]);
            r[row] = norm.norm(&u) - z[n];
            let g = norm.subgradient(&u);
            for j in 0..n {
                r[k + j] += z[n + 1 + row] * g[j];
            }
        }
        r[k + n] = z.rows(n + 1, k).sum() - 1.0;
        r
    };

    let tol = 1e-15 * (1.0 + f0);
    let mut r = residual(&z);
    let mut its = 0;
    for _ in 0..MAX_NEWTON {
        if r.amax() <= tol {
            break;
        }
        its += 1;
        let jac = jacobian(norm, pts, active, &z, n);
        let svd = jac.svd(true, true);
        let Ok(step) = svd.solve(&(-&r), 1e-13) else { return (None, its) };
        let r_norm = r.norm();
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = &z + &step * lambda;
            if trial.iter().all(|v| v.is_finite()) {
                let rt = residual(&trial);
                if rt.norm() < r_norm {
                    z = trial;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let x: Vector = z.rows(0, n).iter().copied().collect();
    let mu: Vec<f64> = z.rows(n + 1, k).iter().copied().collect();
    (Some((x, mu)), its)
}

fn jacobian<N: Norm>(norm: &N, pts: &[Vector], active: &[usize], z: &DVector<f64>, n: usize) -> DMatrix<f64> {
    let k = active.len();
    let m = n + 1 + k;
    let x: Vec<f64> = z.rows(0, n).iter().copied().collect();
    let mut jac = DMatrix::zeros(m, m);
    for (row, &i) in active.iter().enumerate() {
        let u = vecops::sub(&x, &pts[i]);
        let g = norm.subgradient(&u);
        let mu = z[n + 1 + row];
        for j in 0..n {
            jac[(row, j)] = g[j];
            jac[(k + j, n + 1 + row)] = g[j];
        }
        jac[(row, n)] = -1.0;
        // central differences of the gradient
        let h = 1e-6 * vecops::linf(&u).max(1e-300);
        for c in 0..n {
            let mut up = u.clone();
            let mut dn = u.clone();
            up[c] += h;
            dn[c] -= h;
            let gu = norm.subgradient(&up);
            let gd = norm.subgradient(&dn);
            for j in 0..n {
                jac[(k + j, c)] += mu * (gu[j] - gd[j]) / (2.0 * h);
            }
        }
    }
    for i in 0..k {
        jac[(k + n, n + 1 + i)] = 1.0;
    }
    jac
}
