//! Lower bounds on `r(A) = min_x max_a ‖x − a‖`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use nalgebra::{DMatrix, DVector};

use super::SolverOptions;
use crate::norms::Norm;
use crate::sets;
use crate::vecops::{self, Vector};

const NEAR_ACTIVE: [f64; 4] = [1e-9, 1e-7, 1e-5, 1e-3];
const GRID_MAX_DIM: usize = 3;

/// `max(diam/2, dual bound, grid bound)`, never above `f`.
pub(super) fn lower_bound<N: Norm>(norm: &N, pts: &[Vector], x: &[f64], f: f64, diam: f64, opts: &SolverOptions) -> f64 {
    let mut lb = 0.5 * diam;
    lb = lb.max(dual_bound(norm, pts, x, f));
    if f - lb > opts.tol && norm.dim() <= GRID_MAX_DIM {
        lb = lb.max(grid_bound(norm, pts, f, opts.tol, opts.grid_budget));
    }
    lb.min(f)
}

/// Weak-duality bound from subgradients at `x`.
///
/// With `g_i ∈ ∂‖·‖(x − a_i)` and `λ` in the simplex,
/// `F(y) ≥ Σ λ_i d_i + ⟨Σ λ_i g_i, y − x⟩`. Any minimizer `y` satisfies
/// `‖y − x‖ ≤ F(x) + min_j d_j`, which turns the linear term into
/// `−ρ |Σ λ_i g_i|₂`.
fn dual_bound<N: Norm>(norm: &N, pts: &[Vector], x: &[f64], f: f64) -> f64 {
    let dists: Vec<f64> = pts.iter().map(|a| norm.dist(x, a)).collect();
    let dmin = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let rho = (norm.dim() as f64).sqrt() / norm.linf_lower() * (f + dmin);
    let mut best = f64::NEG_INFINITY;
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for band in NEAR_ACTIVE {
        let active: Vec<usize> = (0..pts.len()).filter(|&i| dists[i] >= f * (1.0 - band)).collect();
        if seen.contains(&active) {
            continue;
        }
        seen.push(active.clone());
        let grads: Vec<Vector> = active.iter().map(|&i| norm.subgradient(&vecops::sub(x, &pts[i]))).collect();
        let lambda = min_norm_weights(&grads);
        let mut combo = vec![0.0; norm.dim()];
        let mut level = 0.0;
        for (k, &i) in active.iter().enumerate() {
            level += lambda[k] * dists[i];
            for (c, g) in combo.iter_mut().zip(&grads[k]) {
                *c += lambda[k] * g;
            }
        }
        best = best.max(level - rho * vecops::l2(&combo));
    }
    best
}

/// Simplex weights minimizing `|Σ λ_i g_i|₂`.
///
/// Frank–Wolfe with away steps, then an exact affine solve on the support.
pub(super) fn min_norm_weights(grads: &[Vector]) -> Vec<f64> {
    let k = grads.len();
    if k == 1 {
        return vec![1.0];
    }
    let dim = grads[0].len();
    let gram: Vec<Vec<f64>> = grads.iter().map(|a| grads.iter().map(|b| vecops::dot(a, b)).collect()).collect();
    let mut lambda = vec![1.0 / k as f64; k];
    let mut v = vec![0.0; dim];
    for (l, g) in lambda.iter().zip(grads) {
        for (vj, gj) in v.iter_mut().zip(g) {
            *vj += l * gj;
        }
    }
    for _ in 0..2000 {
        let scores: Vec<f64> = grads.iter().map(|g| vecops::dot(g, &v)).collect();
        let vv = vecops::dot(&v, &v);
        let s = argmin(&scores);
        let a = (0..k).filter(|&i| lambda[i] > 0.0).max_by(|&i, &j| scores[i].total_cmp(&scores[j])).unwrap_or(s);
        let fw_gap = vv - scores[s];
        let away_gap = scores[a] - vv;
        if fw_gap.max(away_gap) <= 1e-15 * (1.0 + gram[s][s]) {
            break;
        }
        // direction d = g_s − v (toward) or v − g_a (away)
        let (target, sign, max_step) = if fw_gap >= away_gap {
            (s, 1.0, 1.0)
        } else {
            let la = lambda[a];
            (a, -1.0, if la < 1.0 { la / (1.0 - la) } else { f64::INFINITY })
        };
        let d: Vec<f64> = grads[target].iter().zip(&v).map(|(g, vj)| sign * (g - vj)).collect();
        let dd = vecops::dot(&d, &d);
        if dd == 0.0 {
            break;
        }
        let step = (-vecops::dot(&v, &d) / dd).clamp(0.0, max_step);
        if step == 0.0 {
            break;
        }
        for l in lambda.iter_mut() {
            *l *= 1.0 - sign * step;
        }
        lambda[target] += sign * step;
        if lambda[target] < 1e-15 {
            lambda[target] = 0.0;
        }
        for (vj, dj) in v.iter_mut().zip(&d) {
            *vj += step * dj;
        }
    }
    refine_on_support(&gram, lambda)
}

/// Solves the equality-constrained min-norm problem on the support of
/// `lambda`; keeps the answer only if it is feasible and no worse.
fn refine_on_support(gram: &[Vec<f64>], lambda: Vec<f64>) -> Vec<f64> {
    let support: Vec<usize> = (0..lambda.len()).filter(|&i| lambda[i] > 0.0).collect();
    let s = support.len();
    if s < 2 {
        return lambda;
    }
    let mut m = DMatrix::zeros(s + 1, s + 1);
    let mut rhs = DVector::zeros(s + 1);
    for (r, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            m[(r, c)] = gram[i][j];
        }
        m[(r, s)] = 1.0;
        m[(s, r)] = 1.0;
    }
    rhs[s] = 1.0;
    let Ok(sol) = m.svd(true, true).solve(&rhs, 1e-14) else { return lambda };
    if (0..s).any(|r| !(sol[r] >= 0.0)) {
        return lambda;
    }
    let mut out = vec![0.0; lambda.len()];
    for (r, &i) in support.iter().enumerate() {
        out[i] = sol[r];
    }
    let total: f64 = out.iter().sum();
    for l in out.iter_mut() {
        *l /= total;
    }
    if quad(gram, &out) <= quad(gram, &lambda) {
        out
    } else {
        lambda
    }
}

fn quad(gram: &[Vec<f64>], l: &[f64]) -> f64 {
    let mut q = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            q += l[i] * l[j] * g;
        }
    }
    q
}

fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[best] {
            best = i;
        }
    }
    best
}

struct Cell {
    bound: f64,
    center: Vector,
    half: Vector,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    // min-heap on the bound
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.total_cmp(&self.bound)
    }
}

/// Branch-and-bound over boxes. On a cell with center `q` and half-widths
/// `h`, `F ≥ F(q) − ‖h‖` because the norm is monotone in absolute values.
///
/// Clamping coordinates into the bounding box of `pts` does not increase any
/// distance, and a minimizer lies within `upper/m` of every point in
/// max-norm, so the search box is the intersection of those boxes.
fn grid_bound<N: Norm>(norm: &N, pts: &[Vector], upper: f64, tol: f64, budget: usize) -> f64 {
    let dim = norm.dim();
    let reach = upper / norm.linf_lower();
    let mut lo = vec![f64::NEG_INFINITY; dim];
    let mut hi = vec![f64::INFINITY; dim];
    for p in pts {
        for k in 0..dim {
            lo[k] = lo[k].max(p[k] - reach);
            hi[k] = hi[k].min(p[k] + reach);
        }
    }
    for k in 0..dim {
        let (pmin, pmax) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[k]), b.max(p[k])));
        lo[k] = lo[k].max(pmin);
        hi[k] = hi[k].min(pmax);
        if lo[k] > hi[k] {
            // only rounding can produce this; the box is a single point
            let mid = 0.5 * (lo[k] + hi[k]);
            lo[k] = mid;
            hi[k] = mid;
        }
    }
    let make = |center: Vector, half: Vector| {
        let bound = sets::outer_radius(norm, pts, &center) - norm.norm(&half);
        Cell { bound, center, half }
    };
    let center: Vector = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let half: Vector = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (b - a)).collect();
    let mut heap = BinaryHeap::new();
    heap.push(make(center, half));
    let mut evaluated = 1;
    loop {
        let Some(cell) = heap.pop() else { return upper };
        if upper - cell.bound <= 0.5 * tol || evaluated >= budget {
            return cell.bound;
        }
        let half: Vector = cell.half.iter().map(|h| 0.5 * h).collect();
        for mask in 0..(1usize << dim) {
            let c: Vector = (0..dim)
                .map(|k| if mask >> k & 1 == 1 { cell.center[k] + half[k] } else { cell.center[k] - half[k] })
                .collect();
            let child = make(c, half.clone());
            evaluated += 1;
            if child.bound < upper {
                heap.push(child);
            }
        }
    }
}
