use super::{SolverOptions, StepSchedule};
use crate::norms::Norm;
use crate::sets;
use crate::vecops::{self, Vector};

/// Running-min samples kept per run.
const TRACE_STRIDE: usize = 10;
/// Polyak level is halved after this many iterations without progress.
const POLYAK_PATIENCE: usize = 20;

pub(super) struct Run {
    pub best_x: Vector,
    pub best_f: f64,
    pub iterations: usize,
    pub trace: Vec<f64>,
    /// Improvement over the final tenth of the run stayed below `tol`.
    pub stagnated: bool,
}

/// Normalized subgradient descent on `x ↦ max_a ‖x − a‖` from `x0`.
pub(super) fn descend<N: Norm>(norm: &N, pts: &[Vector], x0: &[f64], opts: &SolverOptions, lower: f64) -> Run {
    let mut x = x0.to_vec();
    let (f0, i0) = sets::outer_radius_argmax(norm, pts, &x);
    let mut best_x = x.clone();
    let mut best_f = f0;
    let mut trace = vec![f0];
    let alpha0 = 0.5 * vecops::l2(&vecops::sub(&x, &pts[i0])).max(f64::MIN_POSITIVE);
    let scale = 1.0 + vecops::linf(&x);

    let mut level_gap = if f0 > lower { 0.5 * (f0 - lower) } else { 0.5 * f0 };
    let mut since_improvement = 0;
    let mut alpha = alpha0;
    let window = (opts.max_iters / 10).max(1);
    let mut checkpoint = f0;
    let mut stagnated = false;
    let mut iterations = 0;

    for k in 0..opts.max_iters {
        iterations = k + 1;
        let (f, i) = sets::outer_radius_argmax(norm, pts, &x);
        if f < best_f {
            best_f = f;
            best_x.clone_from(&x);
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        if k % TRACE_STRIDE == 0 {
            trace.push(best_f);
        }
        if (k + 1) % window == 0 {
            stagnated = checkpoint - best_f <= opts.tol;
            checkpoint = best_f;
        }

        let g = norm.subgradient(&vecops::sub(&x, &pts[i]));
        let gn = vecops::l2(&g);
        if gn == 0.0 {
            // every point coincides with x
            stagnated = true;
            break;
        }
        let step = match opts.step_schedule {
            StepSchedule::Geometric { decay } => {
                let s = alpha;
                alpha *= decay;
                s
            }
            StepSchedule::PolyakLike => {
                if since_improvement >= POLYAK_PATIENCE {
                    level_gap *= 0.5;
                    since_improvement = 0;
                }
                let level = lower.max(best_f - level_gap);
                (f - level).max(0.0) / gn
            }
        };
        if step <= 1e-15 * scale {
            stagnated = true;
            break;
        }
        for (xj, gj) in x.iter_mut().zip(&g) {
            *xj -= step * gj / gn;
        }
    }
    let f = sets::outer_radius(norm, pts, &x);
    if f < best_f {
        best_f = f;
        best_x = x;
    }
    trace.push(best_f);
    Run { best_x, best_f, iterations, trace, stagnated }
}
