//! Exhaustive grid search for the Chebyshev center in dimension ≤ 3.
//!
//! Shares nothing with the descent solver beyond the distance function, so
//! it serves as an independent check.

use rayon::prelude::*;

use super::CenterResult;
use crate::error::{Error, Result};
use crate::norms::Norm;
use crate::sets::{self, PointSet};
use crate::vecops::Vector;

/// Each refinement keeps this many cells on either side of the argmin.
const REFINE_HALF_WIDTH: f64 = 2.0;

/// Grid search over the box `[lo, hi]` with `refine_levels` zoom steps.
///
/// `gap` is the norm of the final cell diagonal, a bound on how far the
/// reported center can be from the best grid point of a finer search.
pub fn brute_force_center(
    set: &PointSet,
    lo: &[f64],
    hi: &[f64],
    grid_per_axis: usize,
    refine_levels: usize,
) -> Result<CenterResult> {
    brute_force_center_points(set.norm(), set.points(), lo, hi, grid_per_axis, refine_levels)
}

/// [`brute_force_center`] on a raw point list.
pub fn brute_force_center_points<N: Norm + Sync>(
    norm: &N,
    points: &[Vector],
    lo: &[f64],
    hi: &[f64],
    grid_per_axis: usize,
    refine_levels: usize,
) -> Result<CenterResult> {
    let dim = norm.dim();
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    if dim > 3 {
        return Err(Error::Precondition(format!("grid oracle needs dimension ≤ 3, got {dim}")));
    }
    if grid_per_axis < 3 {
        return Err(Error::Precondition("grid needs at least 3 points per axis".into()));
    }
    for b in [lo, hi] {
        sets::check_point(norm, b)?;
    }
    for p in points {
        sets::check_point(norm, p)?;
    }
    if lo.iter().zip(hi).any(|(a, b)| !(a < b)) {
        return Err(Error::Precondition("box needs lo < hi on every axis".into()));
    }

    let g = grid_per_axis;
    let mut box_lo = lo.to_vec();
    let mut box_hi = hi.to_vec();
    let mut best: (Vector, f64) = (Vec::new(), f64::INFINITY);
    let mut cell: Vector = vec![0.0; dim];
    let mut best_edge = true;
    let mut evaluated = 0;
    for _level in 0..=refine_levels {
        for k in 0..dim {
            cell[k] = (box_hi[k] - box_lo[k]) / (g - 1) as f64;
        }
        let total = g.pow(dim as u32);
        evaluated += total;
        // ties go to interior points, then to the lowest index
        let key = |a: &(usize, f64, bool)| (a.1, a.2, a.0);
        let (idx, f, edge) = (0..total)
            .into_par_iter()
            .map(|flat| {
                let x = grid_point(flat, g, &box_lo, &cell);
                let edge = x.iter().enumerate().any(|(k, v)| *v <= lo[k] || *v >= hi[k]);
                (flat, sets::outer_radius(norm, points, &x), edge)
            })
            .reduce(
                || (usize::MAX, f64::INFINITY, true),
                |a, b| if key(&b).partial_cmp(&key(&a)) == Some(std::cmp::Ordering::Less) { b } else { a },
            );
        let x = grid_point(idx, g, &box_lo, &cell);
        if f < best.1 || (f == best.1 && best_edge && !edge) {
            best = (x.clone(), f);
            best_edge = edge;
        }
        for k in 0..dim {
            box_lo[k] = (x[k] - REFINE_HALF_WIDTH * cell[k]).max(lo[k]);
            box_hi[k] = (x[k] + REFINE_HALF_WIDTH * cell[k]).min(hi[k]);
        }
    }
    if best_edge {
        return Err(Error::OracleBoundary);
    }
    let gap = norm.norm(&cell);
    let (center, radius) = best;
    let achieving_indices = points
        .iter()
        .enumerate()
        .filter(|(_, a)| norm.dist(&center, a) >= radius - gap)
        .map(|(i, _)| i)
        .collect();
    Ok(CenterResult {
        center,
        radius,
        achieving_indices,
        gap,
        lower_bound: radius - gap,
        iterations: evaluated,
        multi_start_spread: 0.0,
        certified: false,
        converged: true,
        trace: Vec::new(),
    })
}

fn unflatten(mut flat: usize, g: usize, dim: usize) -> Vec<usize> {
    (0..dim)
        .map(|_| {
            let i = flat % g;
            flat /= g;
            i
        })
        .collect()
}

fn grid_point(flat: usize, g: usize, lo: &[f64], cell: &[f64]) -> Vector {
    unflatten(flat, g, lo.len()).iter().enumerate().map(|(k, &i)| lo[k] + i as f64 * cell[k]).collect()
}
