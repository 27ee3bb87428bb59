//! Chebyshev center and radius of finite point sets.
//!
//! The objective `F(x) = max_a ‖x − a‖` is convex but nonsmooth wherever two
//! points tie. The solver runs multi-start subgradient descent (subgradient
//! taken from the lowest-index farthest point), polishes each start with a
//! Newton step on the active-set optimality system when the norm is smooth
//! there, and certifies the result with a lower bound
//! `max(diam/2, dual bound, grid bound)`.
//!
//! Large point sets are handled by constraint generation: solve on a small
//! working subset, add the points the current center misses, repeat.

mod bounds;
mod descent;
mod line;
mod oracle;
mod polish;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::Norm;
use crate::rng;
use crate::sets::{self, PointSet};
use crate::vecops::{self, Vector};

pub use line::{golden_section_minimize, symmetric_line_minimize, LineMinimum};
pub use oracle::{brute_force_center, brute_force_center_points};

/// Point sets larger than this are solved by constraint generation.
const WORKING_SET_THRESHOLD: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepSchedule {
    /// Polyak step towards an adaptively lowered target level, starting
    /// from `diam/2`.
    PolyakLike,
    /// `α_k = α_0 · decay^k`.
    Geometric { decay: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub max_iters: usize,
    pub step_schedule: StepSchedule,
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub dim_cap: usize,
    /// Cell budget for the grid lower bound (dimension ≤ 3 only).
    pub grid_budget: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iters: 6000,
            step_schedule: StepSchedule::Geometric { decay: 0.996 },
            starts: 8,
            seed: 0,
            tol: 1e-6,
            dim_cap: 64,
            grid_budget: 20_000,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.starts == 0 {
            return Err(Error::InvalidOptions("starts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidOptions("max_iters must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidTolerance);
        }
        if let StepSchedule::Geometric { decay } = self.step_schedule {
            if !(decay > 0.0 && decay < 1.0) {
                return Err(Error::InvalidOptions(format!("decay {decay} outside (0, 1)")));
            }
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Chebyshev center estimate with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterResult {
    pub center: Vector,
    /// `r(center, A)`, an upper bound on `r(A)`.
    pub radius: f64,
    #[serde(rename = "achievers")]
    pub achieving_indices: Vec<usize>,
    /// `radius − lower_bound`, so `radius − r(A) ≤ gap`.
    pub gap: f64,
    pub lower_bound: f64,
    pub iterations: usize,
    /// Largest pairwise distance among the per-start centers.
    #[serde(rename = "spread")]
    pub multi_start_spread: f64,
    /// `gap ≤ tol`.
    pub certified: bool,
    /// Certified, or the descent stagnated below `tol` before `max_iters`.
    /// `false` means the best iterate is reported but is not trustworthy.
    pub converged: bool,
    /// Running minimum of the objective for the winning start, sampled
    /// every few iterations. Non-increasing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<f64>,
}

/// Chebyshev center of `set`.
pub fn chebyshev_center(set: &PointSet, opts: &SolverOptions) -> Result<CenterResult> {
    solve(set.norm(), set.points(), opts, None)
}

/// Chebyshev radius of `set` (the `radius` field of [`chebyshev_center`]).
pub fn chebyshev_radius(set: &PointSet, opts: &SolverOptions) -> Result<f64> {
    Ok(chebyshev_center(set, opts)?.radius)
}

/// Chebyshev center of a raw point list under any [`Norm`].
///
/// `hint`, when given, is used as an extra starting point, so the returned
/// radius never exceeds `r(hint, points)`.
pub fn solve<N: Norm + Sync>(
    norm: &N,
    points: &[Vector],
    opts: &SolverOptions,
    hint: Option<&[f64]>,
) -> Result<CenterResult> {
    opts.validate()?;
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = norm.dim();
    if dim > opts.dim_cap {
        return Err(Error::DimensionCap { dim, cap: opts.dim_cap });
    }
    for p in points {
        sets::check_point(norm, p)?;
    }
    if let Some(h) = hint {
        sets::check_point(norm, h)?;
    }

    if points.len() <= WORKING_SET_THRESHOLD {
        let all: Vec<usize> = (0..points.len()).collect();
        let mut res = solve_core(norm, points, &all, opts, hint);
        res.achieving_indices = achievers(norm, points, &res.center, res.radius, opts.tol);
        return Ok(res);
    }

    let mut working = initial_working_set(norm, points);
    let mut hint_vec: Option<Vector> = hint.map(<[f64]>::to_vec);
    let mut iterations = 0;
    let mut res = loop {
        let res = solve_core(norm, points, &working, opts, hint_vec.as_deref());
        iterations += res.iterations;
        let dists: Vec<f64> = points.iter().map(|a| norm.dist(&res.center, a)).collect();
        let full = dists.iter().copied().fold(0.0, f64::max);
        let slack = 1e-3 * opts.tol;
        if full <= res.radius + slack || working.len() == points.len() {
            break CenterResult { radius: full, ..res };
        }
        let mut missed: Vec<usize> = (0..points.len())
            .filter(|i| dists[*i] > res.radius + slack && !working.contains(i))
            .collect();
        missed.sort_by(|a, b| dists[*b].total_cmp(&dists[*a]).then(a.cmp(b)));
        working.extend(missed.into_iter().take((dim + 1).max(4)));
        working.sort_unstable();
        hint_vec = Some(res.center);
    };
    res.iterations = iterations;
    res.gap = (res.radius - res.lower_bound).max(0.0);
    res.certified = res.gap <= opts.tol;
    res.converged = res.converged || res.certified;
    res.achieving_indices = achievers(norm, points, &res.center, res.radius, opts.tol);
    Ok(res)
}

fn achievers<N: Norm>(norm: &N, points: &[Vector], x: &[f64], radius: f64, tol: f64) -> Vec<usize> {
    let eps = tol.max(sets::DEFAULT_ACHIEVER_TOL);
    points
        .iter()
        .enumerate()
        .filter(|(_, a)| norm.dist(x, a) >= radius - eps)
        .map(|(i, _)| i)
        .collect()
}

/// Coordinate extremes plus a farthest-point walk from the centroid.
fn initial_working_set<N: Norm>(norm: &N, points: &[Vector]) -> Vec<usize> {
    let dim = norm.dim();
    let mut idx = Vec::new();
    for k in 0..dim {
        let by = |cmp: fn(f64, f64) -> bool| {
            let mut best = 0;
            for (i, p) in points.iter().enumerate() {
                if cmp(p[k], points[best][k]) {
                    best = i;
                }
            }
            best
        };
        idx.push(by(|a, b| a < b));
        idx.push(by(|a, b| a > b));
    }
    let mut from = vecops::centroid(points);
    for _ in 0..3 {
        let (_, far) = sets::outer_radius_argmax(norm, points, &from);
        idx.push(far);
        from = points[far].clone();
    }
    idx.sort_unstable();
    idx.dedup();
    idx
}

/// Multi-start solve restricted to `points[subset]`.
///
/// The lower bound is valid for the subset, hence for every superset.
fn solve_core<N: Norm + Sync>(
    norm: &N,
    points: &[Vector],
    subset: &[usize],
    opts: &SolverOptions,
    hint: Option<&[f64]>,
) -> CenterResult {
    let pts: Vec<Vector> = subset.iter().map(|&i| points[i].clone()).collect();
    let diam = sets::diameter(norm, &pts);
    let starts = start_points(&pts, opts, hint);

    let runs: Vec<descent::Run> = starts
        .par_iter()
        .map(|x0| {
            let mut run = descent::descend(norm, &pts, x0, opts, diam / 2.0);
            if let Some((x, f, its)) = polish::polish(norm, &pts, &run.best_x, run.best_f) {
                run.best_x = x;
                run.best_f = f;
                run.iterations += its;
                if let Some(last) = run.trace.last_mut() {
                    *last = last.min(f);
                }
            }
            run
        })
        .collect();

    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.best_f < runs[best].best_f {
            best = i;
        }
    }
    let mut spread = 0.0_f64;
    for (i, a) in runs.iter().enumerate() {
        for b in &runs[i + 1..] {
            spread = spread.max(norm.dist(&a.best_x, &b.best_x));
        }
    }
    let iterations = runs.iter().map(|r| r.iterations).sum();
    let stagnated = runs[best].stagnated;
    let run = runs.into_iter().nth(best).expect("at least one start");

    let lb = bounds::lower_bound(norm, &pts, &run.best_x, run.best_f, diam, opts);
    let gap = (run.best_f - lb).max(0.0);
    let certified = gap <= opts.tol;
    CenterResult {
        center: run.best_x,
        radius: run.best_f,
        achieving_indices: Vec::new(),
        gap,
        lower_bound: lb,
        iterations,
        multi_start_spread: spread,
        certified,
        converged: certified || stagnated,
        trace: run.trace,
    }
}

/// Optional hint, centroid, the points themselves, then seeded perturbations.
fn start_points(pts: &[Vector], opts: &SolverOptions, hint: Option<&[f64]>) -> Vec<Vector> {
    let mut starts: Vec<Vector> = Vec::with_capacity(opts.starts + 1);
    if let Some(h) = hint {
        starts.push(h.to_vec());
    }
    let c = vecops::centroid(pts);
    starts.push(c.clone());
    for p in pts.iter().take(opts.starts.saturating_sub(starts.len())) {
        starts.push(p.clone());
    }
    let spread = pts
        .iter()
        .map(|p| vecops::linf(&vecops::sub(p, &c)))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut r = rng::stream_rng(opts.seed, 0x5eed);
    while starts.len() < opts.starts {
        starts.push(rng::uniform_in_cube(&mut r, &c, 0.5 * spread));
    }
    starts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::NormSpec;

    fn basis_set(dim: usize, p: f64) -> PointSet {
        PointSet::new(NormSpec::pnorm(dim, p).unwrap(), (0..dim).map(|k| vecops::basis(dim, k)).collect()).unwrap()
    }

    fn s_p(p: f64) -> f64 {
        1.0 / (1.0 + 2f64.powf(1.0 / (p - 1.0)))
    }

    #[test]
    fn two_points_midpoint() {
        for norm in [
            NormSpec::euclidean(2),
            NormSpec::pnorm(2, 1.0).unwrap(),
            NormSpec::pnorm(2, f64::INFINITY).unwrap(),
            NormSpec::pnorm(2, 3.0).unwrap(),
        ] {
            let u = vec![0.3, -1.0];
            let v = vec![2.0, 0.5];
            let d = norm.dist(&u, &v);
            let set = PointSet::new(norm.clone(), vec![u, v]).unwrap();
            let res = chebyshev_center(&set, &SolverOptions::default()).unwrap();
            assert!((res.radius - d / 2.0).abs() <= 1e-6, "{norm}: {} vs {}", res.radius, d / 2.0);
            assert!(res.certified, "{norm}");
            assert!(res.gap >= 0.0);
        }
    }

    #[test]
    fn basis_triangle_center_matches_closed_form() {
        for p in [1.5, 3.0, 4.0] {
            let set = basis_set(3, p);
            let res = chebyshev_center(&set, &SolverOptions::default()).unwrap();
            for c in &res.center {
                assert!((c - s_p(p)).abs() < 1e-6, "p={p}: {:?}", res.center);
            }
            assert!(res.certified, "p={p} gap={}", res.gap);
            assert_eq!(res.achieving_indices, vec![0, 1, 2]);
        }
    }

    #[test]
    fn radius_invariants_hold() {
        let set = basis_set(3, 3.0);
        let res = chebyshev_center(&set, &SolverOptions::default()).unwrap();
        assert!((res.radius - set.outer_radius(&res.center).unwrap()).abs() <= 1e-12);
        assert!(res.radius >= set.diameter() / 2.0 - 1e-12);
        assert!(res.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn deterministic_given_seed() {
        let set = PointSet::new(
            NormSpec::pnorm(2, 1.3).unwrap(),
            vec![vec![0.0, 0.0], vec![1.0, 0.2], vec![0.4, 1.1], vec![-0.3, 0.5]],
        )
        .unwrap();
        let opts = SolverOptions::default().with_seed(42);
        assert_eq!(chebyshev_center(&set, &opts).unwrap(), chebyshev_center(&set, &opts).unwrap());
    }

    #[test]
    fn polyak_schedule_converges() {
        let opts = SolverOptions { step_schedule: StepSchedule::PolyakLike, ..SolverOptions::default() };
        let set = basis_set(3, 4.0);
        let res = chebyshev_center(&set, &opts).unwrap();
        assert!((res.center[0] - s_p(4.0)).abs() < 1e-5);
        let two = PointSet::new(NormSpec::pnorm(2, 1.0).unwrap(), vec![vec![0.0, 0.0], vec![1.0, 3.0]]).unwrap();
        assert!((chebyshev_radius(&two, &opts).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn working_set_path_matches_direct() {
        let norm = NormSpec::pnorm(2, 3.0).unwrap();
        let mut r = rng::stream_rng(3, 0);
        let pts: Vec<Vector> = (0..400).map(|_| rng::uniform_in_cube(&mut r, &[0.0, 0.0], 1.0)).collect();
        let big = solve(&norm, &pts, &SolverOptions::default(), None).unwrap();
        assert!((big.radius - sets::outer_radius(&norm, &pts, &big.center)).abs() < 1e-12);
        assert!(big.certified, "gap {}", big.gap);
        let (lo, hi) = (vec![-1.5, -1.5], vec![1.5, 1.5]);
        let oracle = brute_force_center_points(&norm, &pts, &lo, &hi, 21, 5).unwrap();
        assert!((big.radius - oracle.radius).abs() < 1e-4);
    }

    #[test]
    fn errors() {
        let set = basis_set(3, 2.0);
        let opts = SolverOptions { dim_cap: 2, ..SolverOptions::default() };
        assert_eq!(chebyshev_center(&set, &opts).unwrap_err(), Error::DimensionCap { dim: 3, cap: 2 });
        let bad = SolverOptions { starts: 0, ..SolverOptions::default() };
        assert!(chebyshev_center(&set, &bad).is_err());
        let bad = SolverOptions { step_schedule: StepSchedule::Geometric { decay: 1.5 }, ..SolverOptions::default() };
        assert!(chebyshev_center(&set, &bad).is_err());
    }

    #[test]
    fn hint_caps_radius() {
        let set = basis_set(3, 2.0);
        let hint = [1.0 / 3.0; 3];
        let res = solve(set.norm(), set.points(), &SolverOptions::default(), Some(&hint)).unwrap();
        assert!(res.radius <= set.outer_radius(&hint).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let res = chebyshev_center(&basis_set(3, 3.0), &SolverOptions::default()).unwrap();
        let text = serde_json::to_string(&res).unwrap();
        assert!(text.contains("\"achievers\"") && text.contains("\"spread\""));
        let back: CenterResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, res);
    }
}
