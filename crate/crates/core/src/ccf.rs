//! Witnesses for "a Chebyshev center that is also a farthest point", the
//! amplification and two-ball constructions built from them, and sampled
//! estimates of the radius profile `r_{t,z}` that separates spaces where
//! such witnesses exist from spaces where they cannot.
//!
//! `r_{t,z}` is the Chebyshev radius of `B_X ∩ B[z, t]` for a unit vector
//! `z`. A space admits witnesses exactly when `r_{t,z} = t` for some `z` and
//! `t ∈ (0, 1]`; the scan below samples that body and solves on the sample.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{Norm, NormSpec};
use crate::rng;
use crate::sets::{self, PointSet};
use crate::solver::{self, SolverOptions};
use crate::vecops::{self, Vector};

/// Rejection samplers below this acceptance ratio are reported as thin.
pub const MIN_ACCEPT_RATIO: f64 = 1e-3;
/// A scan cell with `r_hat/t` at least `1 − CCF_LIKE_MARGIN` counts as CCF-like.
pub const CCF_LIKE_MARGIN: f64 = 1e-3;
pub const DEFAULT_CAP_SAMPLES: usize = 256;

/// Claimed witness: `points[center_index]` is a Chebyshev center of the set
/// and a farthest point of it from `viewpoint`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CcfWitness {
    pub set: PointSet,
    pub center_index: usize,
    pub viewpoint: Vector,
    pub center_tol: f64,
    pub farthest_tol: f64,
}

impl CcfWitness {
    pub fn new(set: PointSet, center_index: usize, viewpoint: Vector) -> Result<Self> {
        let w = Self { set, center_index, viewpoint, center_tol: 1e-6, farthest_tol: sets::DEFAULT_ACHIEVER_TOL };
        w.validate()?;
        Ok(w)
    }

    pub fn with_tolerances(mut self, center_tol: f64, farthest_tol: f64) -> Result<Self> {
        self.center_tol = center_tol;
        self.farthest_tol = farthest_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.center_index >= self.set.len() {
            return Err(Error::IndexOutOfRange { index: self.center_index, len: self.set.len() });
        }
        for tol in [self.center_tol, self.farthest_tol] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::InvalidTolerance);
            }
        }
        sets::check_point(self.set.norm(), &self.viewpoint)
    }

    pub fn candidate(&self) -> &[f64] {
        &self.set.points()[self.center_index]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    CenterFails,
    FarthestFails,
    /// The solver did not converge, so the center test is not decidable.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub verdict: Verdict,
    /// `r(c, A)` for the candidate `c`.
    pub candidate_radius: f64,
    /// Solver radius and lower bound for `r(A)`.
    pub chebyshev_radius: f64,
    pub lower_bound: f64,
    pub solver_center: Vector,
    /// `r(c, A) ≤ lower_bound + center_tol`: the center claim is proved, not
    /// just consistent with the solver.
    pub center_certified: bool,
    pub converged: bool,
    /// `‖y − c‖`.
    pub viewpoint_distance: f64,
    /// `r(y, A)`.
    pub viewpoint_radius: f64,
    /// `‖y − c‖ − max ‖y − a‖` over points `a` different from `c`; positive
    /// means `c` is the unique farthest point.
    pub strict_margin: f64,
}

/// Checks both halves of a witness.
pub fn verify_ccf_witness(w: &CcfWitness, opts: &SolverOptions) -> Result<WitnessReport> {
    w.validate()?;
    verify_witness_points(w.set.norm(), w.set.points(), w.center_index, &w.viewpoint, w.center_tol, w.farthest_tol, opts)
}

/// [`verify_ccf_witness`] on a raw point list under any [`Norm`].
pub fn verify_witness_points<N: Norm + Sync>(
    norm: &N,
    points: &[Vector],
    center_index: usize,
    viewpoint: &[f64],
    center_tol: f64,
    farthest_tol: f64,
    opts: &SolverOptions,
) -> Result<WitnessReport> {
    if center_index >= points.len() {
        return Err(Error::IndexOutOfRange { index: center_index, len: points.len() });
    }
    for tol in [center_tol, farthest_tol] {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidTolerance);
        }
    }
    sets::check_point(norm, viewpoint)?;
    let c = points[center_index].as_slice();
    if points.iter().all(|p| p.as_slice() == c) {
        return Err(Error::TrivialSet);
    }
    let res = solver::solve(norm, points, opts, None)?;
    let candidate_radius = sets::outer_radius(norm, points, c);
    let dists: Vec<f64> = points.iter().map(|a| norm.dist(viewpoint, a)).collect();
    let viewpoint_radius = dists.iter().copied().fold(0.0, f64::max);
    let viewpoint_distance = dists[center_index];
    let others = points
        .iter()
        .zip(&dists)
        .filter(|(a, _)| a.as_slice() != c)
        .map(|(_, d)| *d)
        .fold(f64::NEG_INFINITY, f64::max);

    let center_certified = candidate_radius <= res.lower_bound + center_tol;
    let center_ok = candidate_radius <= res.radius + center_tol;
    let far_ok = viewpoint_distance >= viewpoint_radius - farthest_tol;
    let verdict = if !res.converged && !center_certified {
        Verdict::Indeterminate
    } else if !center_ok {
        Verdict::CenterFails
    } else if !far_ok {
        Verdict::FarthestFails
    } else {
        Verdict::Confirmed
    };
    Ok(WitnessReport {
        verdict,
        candidate_radius,
        chebyshev_radius: res.radius,
        lower_bound: res.lower_bound,
        solver_center: res.center,
        center_certified,
        converged: res.converged,
        viewpoint_distance,
        viewpoint_radius,
        strict_margin: viewpoint_distance - others,
    })
}

/// Moves the viewpoint away along the ray from `c` through `z`:
/// `y = t·z + (1 − t)·c`.
///
/// If `c` is farthest from `z` it stays farthest from `y`, and
/// `‖y − c‖ = t‖z − c‖`.
pub fn amplify_witness(set: &PointSet, c: &[f64], z: &[f64], t: f64) -> Result<Vector> {
    sets::check_point(set.norm(), c)?;
    if !(t.is_finite() && t >= 1.0) {
        return Err(Error::Precondition(format!("amplification factor t = {t} must be ≥ 1")));
    }
    let rz = set.outer_radius(z)?;
    let dc = set.norm().dist(z, c);
    if dc < rz - sets::DEFAULT_ACHIEVER_TOL * (1.0 + rz) {
        return Err(Error::Precondition(format!("c is not farthest from z: ‖z − c‖ = {dc} < r(z, A) = {rz}")));
    }
    Ok(vecops::lincomb(t, z, 1.0 - t, c))
}

/// `U = B[c, r] ∩ B[y, R]` with `R = ‖y − c‖`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoBallSet {
    pub c: Vector,
    pub r: f64,
    pub y: Vector,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub norm: NormSpec,
    pub sampler_seed: u64,
}

/// Builds the two-ball set for a center `c` of radius `r` that is farthest
/// from `y`. Rejects `r > R` and a `c` that is not farthest from `y`.
pub fn build_two_ball_set(set: &PointSet, c: &[f64], r: f64, y: &[f64]) -> Result<TwoBallSet> {
    sets::check_point(set.norm(), c)?;
    sets::check_point(set.norm(), y)?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::NegativeRadius(r));
    }
    let big_r = set.norm().dist(c, y);
    let tol = sets::DEFAULT_ACHIEVER_TOL * (1.0 + big_r);
    let ry = set.outer_radius(y)?;
    if big_r < ry - tol {
        return Err(Error::Precondition(format!("c is not farthest from y: ‖y − c‖ = {big_r} < r(y, A) = {ry}")));
    }
    if r > big_r + tol {
        return Err(Error::Precondition(format!("radius {r} exceeds ‖y − c‖ = {big_r}")));
    }
    Ok(TwoBallSet { c: c.to_vec(), r, y: y.to_vec(), big_r, norm: set.norm().clone(), sampler_seed: 0 })
}

impl TwoBallSet {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.sampler_seed = seed;
        self
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.norm.dist(x, &self.c) <= self.r + tol && self.norm.dist(x, &self.y) <= self.big_r + tol
    }

    /// Rejection sample from the box `c ± r/m` (which contains `B[c, r]`),
    /// drawing `candidates` points. Always returns `[c]` when `r = 0`.
    pub fn sample(&self, candidates: usize) -> Vec<Vector> {
        if self.r == 0.0 {
            return vec![self.c.clone()];
        }
        let half = self.r / self.norm.linf_lower();
        let mut g = rng::stream_rng(self.sampler_seed, 0);
        (0..candidates)
            .map(|_| rng::uniform_in_cube(&mut g, &self.c, half))
            .filter(|x| self.contains(x, 0.0))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoBallReport {
    /// Every point of the set lies in both balls.
    pub contains_set: bool,
    /// The Chebyshev radius of sample ∪ set equals `r`.
    pub radius_preserved: bool,
    /// `c` is still a Chebyshev center of sample ∪ set.
    pub center_preserved: bool,
    /// No sampled point is farther from `y` than `c`.
    pub farthest_preserved: bool,
    pub sample_size: usize,
    pub sample_radius: f64,
    pub sample_gap: f64,
    pub center_outer_radius: f64,
    pub max_viewpoint_distance: f64,
    pub all_pass: bool,
}

/// Checks the four properties of the two-ball set on a deterministic sample.
///
/// The sample is augmented by the set itself, so it is a finite subset of
/// `U` whenever the set lies in `U`.
pub fn check_two_ball_properties(
    u: &TwoBallSet,
    set: &PointSet,
    samples: usize,
    opts: &SolverOptions,
) -> Result<TwoBallReport> {
    if set.norm() != &u.norm {
        return Err(Error::Precondition("two-ball set and point set use different norms".into()));
    }
    let tol = opts.tol;
    let contains_set = set.points().iter().all(|a| u.contains(a, sets::DEFAULT_ACHIEVER_TOL * (1.0 + u.big_r)));
    let drawn = u.sample(samples);
    if drawn.is_empty() {
        return Err(Error::EmptySample);
    }
    let sample_size = drawn.len();
    let mut pts = drawn;
    pts.extend(set.points().iter().cloned());
    let res = solver::solve(&u.norm, &pts, opts, Some(&u.c))?;
    let center_outer_radius = sets::outer_radius(&u.norm, &pts, &u.c);
    let max_viewpoint_distance = pts.iter().map(|p| u.norm.dist(p, &u.y)).fold(0.0, f64::max);

    let radius_preserved = (res.radius - u.r).abs() <= tol + res.gap;
    let center_preserved = center_outer_radius <= res.radius + tol && center_outer_radius <= u.r + tol;
    let farthest_preserved = max_viewpoint_distance <= u.big_r + tol;
    Ok(TwoBallReport {
        contains_set,
        radius_preserved,
        center_preserved,
        farthest_preserved,
        sample_size,
        sample_radius: res.radius,
        sample_gap: res.gap,
        center_outer_radius,
        max_viewpoint_distance,
        all_pass: contains_set && radius_preserved && center_preserved && farthest_preserved,
    })
}

/// Sampled estimate of `r_{t,z}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RtzEstimate {
    pub z: Vector,
    pub t: f64,
    /// Chebyshev radius of the accepted sample, solved with `z` as a start.
    /// The sample lies in `B[z, t]`, so `r_hat ≤ t`; it lies in the body, so
    /// `r_hat ≤ r_{t,z}` up to the solver gap.
    pub r_hat: f64,
    pub sample_count: usize,
    pub candidates: usize,
    pub accept_ratio: f64,
    pub gap: f64,
}

impl RtzEstimate {
    pub fn ratio(&self) -> f64 {
        self.r_hat / self.t
    }
}

/// Estimates `r_{t,z}` from `samples` candidates drawn in the box `z ± t/m`.
pub fn estimate_r_tz(
    norm: &NormSpec,
    z: &[f64],
    t: f64,
    samples: usize,
    opts: &SolverOptions,
    seed: u64,
) -> Result<RtzEstimate> {
    estimate_on_stream(norm, z, t, samples, opts, seed, 0)
}

fn estimate_on_stream(
    norm: &NormSpec,
    z: &[f64],
    t: f64,
    samples: usize,
    opts: &SolverOptions,
    seed: u64,
    stream: u64,
) -> Result<RtzEstimate> {
    sets::check_point(norm, z)?;
    if (norm.norm(z) - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("z must be a unit vector, ‖z‖ = {}", norm.norm(z))));
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::Precondition(format!("t = {t} outside (0, 1]")));
    }
    if samples == 0 {
        return Err(Error::EmptySample);
    }
    let half = t / norm.linf_lower();
    let mut g = rng::stream_rng(seed, stream);
    let pts: Vec<Vector> = (0..samples)
        .map(|_| rng::uniform_in_cube(&mut g, z, half))
        .filter(|x| norm.norm(x) <= 1.0 && norm.dist(x, z) <= t)
        .collect();
    let accept_ratio = pts.len() as f64 / samples as f64;
    if accept_ratio < MIN_ACCEPT_RATIO {
        return Err(Error::ThinIntersection { ratio: accept_ratio, min: MIN_ACCEPT_RATIO });
    }
    let res = solver::solve(norm, &pts, opts, Some(z))?;
    Ok(RtzEstimate {
        z: z.to_vec(),
        t,
        r_hat: res.radius,
        sample_count: pts.len(),
        candidates: samples,
        accept_ratio,
        gap: res.gap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanVerdict {
    /// Some cell has `r_hat/t ≥ 1 − CCF_LIKE_MARGIN`.
    CcfLike,
    /// Every cell has `r_hat/t ≤ 1 − 10·tol`. Evidence, not proof: the
    /// sample only bounds `r_{t,z}` from below.
    CcnfEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub max_ratio: f64,
    pub argmax: usize,
    pub min_accept_ratio: f64,
    pub verdict: ScanVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub norm: NormSpec,
    pub rows: Vec<RtzEstimate>,
    pub summary: ScanSummary,
}

impl ScanTable {
    /// Columns `z_1..z_n, t, r_hat, ratio, samples, accept_ratio`.
    pub fn to_csv(&self) -> Result<String> {
        let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = (1..=self.norm.dim()).map(|k| format!("z_{k}")).collect();
        header.extend(["t", "r_hat", "ratio", "samples", "accept_ratio"].map(String::from));
        w.write_record(&header).map_err(io)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.z.iter().map(|v| v.to_string()).collect();
            rec.push(row.t.to_string());
            rec.push(row.r_hat.to_string());
            rec.push(row.ratio().to_string());
            rec.push(row.sample_count.to_string());
            rec.push(row.accept_ratio.to_string());
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Unit directions from normalized box samples; stream `u64::MAX` of `seed`.
pub fn sample_unit_directions(norm: &NormSpec, count: usize, seed: u64) -> Vec<Vector> {
    let dim = norm.dim();
    let mut g = rng::stream_rng(seed, u64::MAX);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng::uniform_in_cube(&mut g, &vec![0.0; dim], 1.0);
        let n = norm.norm(&v);
        if n > 1e-3 {
            out.push(vecops::scale(&v, 1.0 / n));
        }
    }
    out
}

/// Estimates `r_{t,z}/t` on `z_count` directions times `t_grid`.
///
/// Cell `k` (row-major, directions outer) draws from stream `k` of `seed`,
/// so cells are independent and the table is identical at any thread count.
pub fn ccnf_scan(
    norm: &NormSpec,
    z_count: usize,
    t_grid: &[f64],
    samples: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<ScanTable> {
    if t_grid.is_empty() || z_count == 0 {
        return Err(Error::Precondition("scan needs at least one direction and one t".into()));
    }
    if norm.dim() > 8 {
        return Err(Error::Precondition("scans are limited to dimension ≤ 8".into()));
    }
    let zs = sample_unit_directions(norm, z_count, seed);
    let cells: Vec<(usize, &Vector, f64)> = zs
        .iter()
        .flat_map(|z| t_grid.iter().map(move |&t| (z, t)))
        .enumerate()
        .map(|(k, (z, t))| (k, z, t))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(k, z, t)| estimate_on_stream(norm, z, t, samples, opts, seed, k as u64))
        .collect::<Result<Vec<_>>>()?;
    let (argmax, max_ratio) = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.ratio()))
        .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });
    let min_accept_ratio = rows.iter().map(|r| r.accept_ratio).fold(f64::INFINITY, f64::min);
    let verdict = if max_ratio >= 1.0 - CCF_LIKE_MARGIN {
        ScanVerdict::CcfLike
    } else if max_ratio <= 1.0 - 10.0 * opts.tol {
        ScanVerdict::CcnfEvidence
    } else {
        ScanVerdict::Inconclusive
    };
    Ok(ScanTable { norm: norm.clone(), rows, summary: ScanSummary { max_ratio, argmax, min_accept_ratio, verdict } })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapReport {
    pub w: Vector,
    pub r: f64,
    /// `max ‖s − w‖ − r` over the sampled cap.
    pub max_excess: f64,
    pub max_distance: f64,
    pub min_distance: f64,
    pub samples: usize,
}

/// Samples the cap of the unit sphere cut off by the chord `[u, v]` (the arc
/// on the side away from the origin) and measures how far it reaches from
/// the chord midpoint `w`, relative to the half-chord `r = ‖u − v‖/2`.
pub fn cap_containment_check(norm: &NormSpec, u: &[f64], v: &[f64], samples: usize) -> Result<CapReport> {
    if norm.dim() != 2 {
        return Err(Error::Precondition("cap check is two-dimensional".into()));
    }
    sets::check_point(norm, u)?;
    sets::check_point(norm, v)?;
    for x in [u, v] {
        if (norm.norm(x) - 1.0).abs() > 1e-9 {
            return Err(Error::Precondition("u and v must be unit vectors".into()));
        }
    }
    if samples < 2 {
        return Err(Error::Precondition("need at least two cap samples".into()));
    }
    let w = vecops::lincomb(0.5, u, 0.5, v);
    let r = 0.5 * norm.dist(u, v);
    if u == v {
        return Ok(CapReport { w, r: 0.0, max_excess: 0.0, max_distance: 0.0, min_distance: 0.0, samples: 1 });
    }
    // distance from θ to the chord, minimized over the segment
    let d = vecops::sub(v, u);
    let s = (-vecops::dot(u, &d) / vecops::dot(&d, &d)).clamp(0.0, 1.0);
    if norm.norm(&vecops::lincomb(1.0, u, s, &d)) <= 1e-9 {
        return Err(Error::Precondition("the chord passes through the origin".into()));
    }
    let a0 = u[1].atan2(u[0]);
    let mut sweep = v[1].atan2(v[0]) - a0;
    // the far-side arc is the one spanning less than a half turn
    while sweep > std::f64::consts::PI {
        sweep -= 2.0 * std::f64::consts::PI;
    }
    while sweep < -std::f64::consts::PI {
        sweep += 2.0 * std::f64::consts::PI;
    }
    let mut max_distance = f64::NEG_INFINITY;
    let mut min_distance = f64::INFINITY;
    for k in 0..samples {
        let phi = a0 + sweep * k as f64 / (samples - 1) as f64;
        let dir = [phi.cos(), phi.sin()];
        let point = if k == 0 {
            u.to_vec()
        } else if k == samples - 1 {
            v.to_vec()
        } else {
            vecops::scale(&dir, 1.0 / norm.norm(&dir))
        };
        let dist = norm.dist(&point, &w);
        max_distance = max_distance.max(dist);
        min_distance = min_distance.min(dist);
    }
    Ok(CapReport { w, r, max_excess: max_distance - r, max_distance, min_distance, samples })
}

/// Outcome of searching for a set whose computed center is a farthest point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FalsificationReport {
    pub sets: usize,
    pub viewpoints_per_set: usize,
    pub counterexamples: usize,
    /// Smallest `max_a ‖y − a‖ − ‖y − c‖` seen; positive means the center was
    /// never a farthest point.
    pub min_margin: f64,
}

/// Draws `set_count` random sets of 2 to `max_points` points in `[−1, 1]^n`,
/// appends each set's computed center `c`, and checks `viewpoints` random
/// `y` for a point strictly farther than `c` (by more than `1e-9`).
///
/// In a strictly convex plane a center is never farthest, so any
/// counterexample refutes either the solver or the norm.
pub fn center_farthest_search(
    norm: &NormSpec,
    set_count: usize,
    max_points: usize,
    viewpoints: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<FalsificationReport> {
    if max_points < 2 {
        return Err(Error::Precondition("sets need at least two points".into()));
    }
    let dim = norm.dim();
    let origin = vec![0.0; dim];
    let per_set = (0..set_count)
        .into_par_iter()
        .map(|k| {
            let mut g = rng::stream_rng(seed, k as u64);
            let n = 2 + (g_index(&mut g, max_points - 1));
            let pts: Vec<Vector> = (0..n).map(|_| rng::uniform_in_cube(&mut g, &origin, 1.0)).collect();
            let res = solver::solve(norm, &pts, opts, None)?;
            let c = res.center;
            let mid = vecops::centroid(&pts);
            let extent = pts.iter().map(|p| vecops::linf(&vecops::sub(p, &mid))).fold(0.0, f64::max).max(1e-3);
            let mut bad = 0;
            let mut margin = f64::INFINITY;
            for _ in 0..viewpoints {
                let y = rng::uniform_in_cube(&mut g, &mid, 3.0 * extent);
                let far = sets::outer_radius(norm, &pts, &y);
                let m = far - norm.dist(&y, &c);
                margin = margin.min(m);
                if m <= 1e-9 {
                    bad += 1;
                }
            }
            Ok((bad, margin))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FalsificationReport {
        sets: set_count,
        viewpoints_per_set: viewpoints,
        counterexamples: per_set.iter().map(|p| p.0).sum(),
        min_margin: per_set.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
    })
}

/// Uniform index in `0..n`.
fn g_index<R: rand::Rng>(g: &mut R, n: usize) -> usize {
    g.random_range(0..n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1_triple() -> PointSet {
        PointSet::new(NormSpec::pnorm(2, 1.0).unwrap(), vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap()
    }

    #[test]
    fn l1_segment_witness_confirmed() {
        let w = CcfWitness::new(l1_triple(), 2, vec![0.0, 0.0]).unwrap();
        let rep = verify_ccf_witness(&w, &SolverOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Confirmed, "{rep:?}");
        assert!(rep.center_certified);
    }

    #[test]
    fn euclidean_far_viewpoint_fails() {
        let set = PointSet::new(NormSpec::euclidean(2), vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let w = CcfWitness::new(set, 2, vec![0.0, 5.0]).unwrap();
        let rep = verify_ccf_witness(&w, &SolverOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::FarthestFails);
        assert!((rep.viewpoint_radius - 26f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_center_rejected() {
        let w = CcfWitness::new(l1_triple(), 0, vec![-1.0, 0.0]).unwrap();
        let rep = verify_ccf_witness(&w, &SolverOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::CenterFails);
    }

    #[test]
    fn witness_validation() {
        assert!(CcfWitness::new(l1_triple(), 3, vec![0.0, 0.0]).is_err());
        assert!(CcfWitness::new(l1_triple(), 0, vec![0.0]).is_err());
        let w = CcfWitness::new(l1_triple(), 0, vec![0.0, 0.0]).unwrap();
        assert!(w.with_tolerances(0.0, 1e-9).is_err());
    }

    #[test]
    fn amplify_examples() {
        let set = l1_triple();
        let c = [0.5, 0.5];
        assert_eq!(amplify_witness(&set, &c, &[0.0, 0.0], 1.0).unwrap(), vec![0.0, 0.0]);
        let y = amplify_witness(&set, &c, &[0.0, 0.0], 3.0).unwrap();
        assert_eq!(y, vec![-1.0, -1.0]);
        for d in set.distances_from(&y) {
            assert_eq!(d, 3.0);
        }
        let y = amplify_witness(&set, &c, &[0.0, 0.0], 10.0).unwrap();
        assert!((set.norm().dist(&y, &c) - 10.0).abs() < 1e-12);
        assert!(amplify_witness(&set, &[1.0, 0.0], &[-1.0, 0.0], 2.0).unwrap() == vec![-3.0, 0.0]);
        assert!(amplify_witness(&set, &c, &[2.0, 0.0], 2.0).is_err());
        assert!(amplify_witness(&set, &c, &[0.0, 0.0], 0.5).is_err());
    }

    #[test]
    fn two_ball_on_l1_triple() {
        let set = l1_triple();
        let u = build_two_ball_set(&set, &[0.5, 0.5], 1.0, &[0.0, 0.0]).unwrap();
        assert_eq!(u.big_r, 1.0);
        let rep = check_two_ball_properties(&u, &set, 10_000, &SolverOptions::default()).unwrap();
        assert!(rep.all_pass, "{rep:?}");
        assert!(rep.sample_size > 1000);
    }

    #[test]
    fn two_ball_with_halved_radius_loses_the_set() {
        let set = l1_triple();
        let u = build_two_ball_set(&set, &[0.5, 0.5], 0.5, &[0.0, 0.0]).unwrap();
        let rep = check_two_ball_properties(&u, &set, 2_000, &SolverOptions::default()).unwrap();
        assert!(!rep.contains_set && !rep.all_pass);
    }

    #[test]
    fn two_ball_singleton_and_rejection() {
        let single = PointSet::new(NormSpec::euclidean(2), vec![vec![0.3, 0.3]]).unwrap();
        let u = build_two_ball_set(&single, &[0.3, 0.3], 0.0, &[1.0, 1.0]).unwrap();
        assert_eq!(u.sample(100), vec![vec![0.3, 0.3]]);
        assert!(check_two_ball_properties(&u, &single, 100, &SolverOptions::default()).unwrap().all_pass);

        let pair = PointSet::new(NormSpec::euclidean(2), vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        assert!(build_two_ball_set(&pair, &[0.0, 0.0], 1.0, &[0.0, 2.0]).is_err());
    }

    #[test]
    fn two_ball_radius_above_viewpoint_distance_rejected() {
        let set = l1_triple();
        assert!(build_two_ball_set(&set, &[0.5, 0.5], 1.5, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn euclidean_lens_radius_below_t() {
        // B ∩ B[(1,0), t] in the plane has radius t·sqrt(1 − t²/4)
        let norm = NormSpec::euclidean(2);
        let est = estimate_r_tz(&norm, &[1.0, 0.0], 0.5, 20_000, &SolverOptions::default(), 0).unwrap();
        let exact = 0.5 * (1.0 - 0.0625f64).sqrt();
        assert!(est.r_hat <= exact + 1e-6 && est.r_hat > exact - 5e-3, "{} vs {exact}", est.r_hat);
        assert!(est.r_hat < 0.5 - 0.01);
    }

    #[test]
    fn sup_norm_box_radius_reaches_t() {
        let norm = NormSpec::pnorm(2, f64::INFINITY).unwrap();
        let est = estimate_r_tz(&norm, &[1.0, 0.0], 0.5, 20_000, &SolverOptions::default(), 0).unwrap();
        assert!(est.r_hat <= 0.5 + 1e-12 && est.r_hat > 0.49, "{}", est.r_hat);
    }

    #[test]
    fn estimate_preconditions() {
        let norm = NormSpec::euclidean(2);
        let o = SolverOptions::default();
        assert!(estimate_r_tz(&norm, &[2.0, 0.0], 0.5, 100, &o, 0).is_err());
        assert!(estimate_r_tz(&norm, &[1.0, 0.0], 1.5, 100, &o, 0).is_err());
        assert!(estimate_r_tz(&norm, &[1.0, 0.0], 0.0, 100, &o, 0).is_err());
        let est = estimate_r_tz(&norm, &[1.0, 0.0], 1.0, 2_000, &o, 0).unwrap();
        assert!(est.r_hat <= 1.0);
    }

    #[test]
    fn scan_is_deterministic_and_csv_shaped() {
        let norm = NormSpec::pnorm(2, 1.0).unwrap();
        let o = SolverOptions::default();
        let a = ccnf_scan(&norm, 2, &[0.5, 1.0], 500, 7, &o).unwrap();
        let b = ccnf_scan(&norm, 2, &[0.5, 1.0], 500, 7, &o).unwrap();
        assert_eq!(a, b);
        let csv = a.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "z_1,z_2,t,r_hat,ratio,samples,accept_ratio");
        assert_eq!(lines.count(), 4);
        assert!(ccnf_scan(&norm, 2, &[], 500, 7, &o).is_err());
    }

    #[test]
    fn cap_in_the_euclidean_quarter() {
        let norm = NormSpec::euclidean(2);
        let rep = cap_containment_check(&norm, &[1.0, 0.0], &[0.0, 1.0], 257).unwrap();
        assert!((rep.r - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(rep.max_excess.abs() <= 1e-15, "{}", rep.max_excess);
        // the arc midpoint is the closest cap point to w
        assert!((rep.min_distance - (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn cap_degenerate_and_rejections() {
        let norm = NormSpec::pnorm(2, 4.0).unwrap();
        let rep = cap_containment_check(&norm, &[1.0, 0.0], &[1.0, 0.0], 10).unwrap();
        assert_eq!((rep.r, rep.max_excess), (0.0, 0.0));
        assert!(cap_containment_check(&norm, &[1.0, 0.0], &[-1.0, 0.0], 10).is_err());
        assert!(cap_containment_check(&norm, &[0.5, 0.0], &[0.0, 1.0], 10).is_err());
        let rep = cap_containment_check(&norm, &[1.0, 0.0], &[0.0, 1.0], 1000).unwrap();
        assert!(rep.max_excess <= 1e-9);
    }

    #[test]
    fn center_never_farthest_in_l3_plane() {
        let norm = NormSpec::pnorm(2, 3.0).unwrap();
        let rep = center_farthest_search(&norm, 10, 6, 50, 1, &SolverOptions::default()).unwrap();
        assert_eq!(rep.counterexamples, 0);
        assert!(rep.min_margin > 0.0);
    }
}
