//! Reproducible constructions of sets whose Chebyshev center is a farthest
//! point, each packaged as an [`ExampleReport`] of individual checks.
//!
//! * `{θ, e_1, …, e_n}` under `‖x‖₁ + ½‖x‖₂`, `n ≥ 3`: the center θ is the
//!   farthest point from `(1, …, 1)`.
//! * A finite truncation of a centerable set in `c₀` under
//!   `max_k |x_k| + (Σ 4^{-k} x_k²)^{1/2}`.
//! * The basis triangle of `ℓ_p³` with its center appended, for `p ≠ 2`.
//! * The isometric, norm-one-complemented copy of `ℓ_p³` inside a weighted
//!   discrete `L_p`, which carries the last witness over.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ccf::{self, Verdict};
use crate::error::{Error, Result};
use crate::norms::{Norm, NormSpec};
use crate::rng;
use crate::sets::{self, PointSet};
use crate::solver::{self, SolverOptions};
use crate::vecops::{self, Vector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    /// All checks passed.
    pub overall: bool,
}

impl ExampleReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), parameters: BTreeMap::new(), checks: Vec::new(), overall: true }
    }

    fn param(&mut self, key: &str, value: Value) {
        self.parameters.insert(key.into(), value);
    }

    fn check(&mut self, description: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) {
        self.overall &= pass;
        self.checks.push(Check { description: description.into(), expected: expected.into(), observed: observed.into(), pass });
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// `‖x‖₁ + ½‖x‖₂` on R^n.
pub fn l1_plus_half_l2(n: usize) -> Result<NormSpec> {
    NormSpec::sum(n, vec![(1.0, NormSpec::pnorm(n, 1.0)?), (0.5, NormSpec::pnorm(n, 2.0)?)])
}

/// `max_k |x_k| + (Σ_{k=1}^{N} 4^{-k} x_k²)^{1/2}` on R^N.
pub fn sup_plus_geometric_l2(n: usize) -> Result<NormSpec> {
    NormSpec::sup_plus_weighted_l2((1..=n).map(|k| 0.25f64.powi(k as i32)).collect())
}

/// `{θ, e_1, …, e_n}` under [`l1_plus_half_l2`].
pub fn finite_dim_set(n: usize) -> Result<PointSet> {
    let mut pts = vec![vec![0.0; n]];
    pts.extend((0..n).map(|k| vecops::basis(n, k)));
    PointSet::new(l1_plus_half_l2(n)?, pts)
}

/// The center `θ` of `{θ, e_1, …, e_n}` is its farthest point from `(1, …, 1)`.
pub fn example_finite_dim(n: usize, opts: &SolverOptions) -> Result<ExampleReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("needs n ≥ 3, got {n}")));
    }
    let set = finite_dim_set(n)?;
    let norm = set.norm();
    let z = vec![1.0; n];
    let theta = vec![0.0; n];
    let nf = n as f64;
    let mut rep = ExampleReport::new("finite_dim");
    rep.param("n", json!(n));
    rep.param("norm", json!(norm));

    let to_basis = (nf - 1.0) + (nf - 1.0).sqrt() / 2.0;
    let worst = (0..n).map(|k| (norm.dist(&z, &vecops::basis(n, k)) - to_basis).abs()).fold(0.0, f64::max);
    rep.check(
        "‖z − e_k‖ = (n−1) + √(n−1)/2 for every k",
        format!("{to_basis}"),
        format!("max deviation {worst:e}"),
        worst <= 1e-12 * to_basis,
    );

    let to_theta = norm.dist(&z, &theta);
    let expected = nf + nf.sqrt() / 2.0;
    rep.check(
        "‖z − θ‖ = n + √n/2 exceeds ‖z − e_k‖",
        format!("{expected} > {to_basis}"),
        format!("{to_theta}"),
        (to_theta - expected).abs() <= 1e-12 * expected && to_theta > to_basis,
    );

    let far = set.farthest_set(&z, sets::DEFAULT_ACHIEVER_TOL)?;
    rep.check("farthest set from z is {θ}", "[0]", format!("{:?}", far.achievers), far.achievers == [0]);

    let line = solver::symmetric_line_minimize(&set, &z, opts)?;
    let grid_ok = (0..=600).map(|i| -3.0 + 0.01 * i as f64).all(|s| {
        let x = vecops::scale(&z, s);
        set.outer_radius(&x).map(|r| r >= 1.5 - 1e-12).unwrap_or(false)
    });
    rep.check(
        "r(s·z, A) is minimized at s = 0, and r(s·z, A) ≥ 3/2 on s ∈ [−3, 3]",
        "s = 0 within 1e-6, radius 1.5",
        format!("s = {:e}, radius {}", line.s, line.radius),
        line.s.abs() <= 1e-6 && (line.radius - 1.5).abs() <= 1e-9 && grid_ok,
    );

    let res = solver::chebyshev_center(&set, opts)?;
    let off = vecops::linf(&res.center);
    rep.param("solver_certified", json!(res.certified));
    rep.param("solver_gap", json!(res.gap));
    rep.check(
        "solver center is θ with radius 3/2",
        "|c|∞ ≤ 1e-4, |r − 1.5| ≤ 1e-6, converged",
        format!("|c|∞ = {off:e}, r = {}, converged = {}", res.radius, res.converged),
        off <= 1e-4 && (res.radius - 1.5).abs() <= 1e-6 && res.converged,
    );
    Ok(rep)
}

/// `{θ} ∪ {x_n, y_n : n = 2..N}` with `x_n, y_n = e_1/n ± (1 − 1/n) e_n`.
pub fn c0_truncated_set(n_max: usize) -> Result<PointSet> {
    let mut pts = vec![vec![0.0; n_max]];
    for n in 2..=n_max {
        let a = 1.0 / n as f64;
        let mut x = vec![0.0; n_max];
        x[0] = a;
        x[n - 1] = 1.0 - a;
        let mut y = x.clone();
        y[n - 1] = -(1.0 - a);
        pts.push(x);
        pts.push(y);
    }
    PointSet::new(sup_plus_geometric_l2(n_max)?, pts)
}

/// Truncation of the centerable example in `c₀`. In `c₀` the set has radius
/// exactly 1 with center θ; here every claim holds up to `1/N`.
pub fn example_c0_truncated(n_max: usize, opts: &SolverOptions) -> Result<ExampleReport> {
    if n_max < 3 {
        return Err(Error::Precondition(format!("needs N ≥ 3, got {n_max}")));
    }
    if n_max > opts.dim_cap {
        return Err(Error::DimensionCap { dim: n_max, cap: opts.dim_cap });
    }
    let set = c0_truncated_set(n_max)?;
    let norm = set.norm();
    let nf = n_max as f64;
    let mut rep = ExampleReport::new("c0_truncated");
    rep.param("N", json!(n_max));
    rep.param(
        "untruncated_claim",
        json!("in c0 the set is centerable with r(A) = 1 and θ a center farthest from e_1; checked here up to 1/N"),
    );

    let mut worst_formula = 0.0_f64;
    let mut max_norm = 0.0_f64;
    for n in 2..=n_max {
        let a = 1.0 / n as f64;
        let formula = (1.0 - a) + (a * a / 4.0 + 0.25f64.powi(n as i32) * (1.0 - a) * (1.0 - a)).sqrt();
        for p in &set.points()[2 * n - 3..2 * n - 1] {
            let v = norm.norm(p);
            worst_formula = worst_formula.max((v - formula).abs());
            max_norm = max_norm.max(v);
        }
    }
    rep.check(
        "‖x_n‖ = ‖y_n‖ = (1−1/n) + √(1/(4n²) + 4^{−n}(1−1/n)²) < 1",
        "formula match ≤ 1e-12 and max < 1",
        format!("deviation {worst_formula:e}, max {max_norm}"),
        worst_formula <= 1e-12 && max_norm < 1.0,
    );

    let diam = set.diameter();
    rep.check("diam ≥ 2(1 − 1/N)", format!("≥ {}", 2.0 * (1.0 - 1.0 / nf)), format!("{diam}"), diam >= 2.0 * (1.0 - 1.0 / nf));

    let r_theta = set.outer_radius(&vec![0.0; n_max])?;
    let res = solver::chebyshev_center(&set, opts)?;
    let centerable = set.is_centerable(res.radius, 1.0 / nf)?;
    rep.param("solver_radius", json!(res.radius));
    rep.param("solver_converged", json!(res.converged));
    rep.check(
        "r(θ, A_N) < 1, r(θ, A_N) − r(A_N) ≤ 1/N, and A_N is centerable within 1/N",
        format!("r(θ) < 1, difference ≤ {}", 1.0 / nf),
        format!("r(θ) = {r_theta}, r(A_N) = {}, difference {}", res.radius, r_theta - res.radius),
        r_theta < 1.0 && r_theta - res.radius <= 1.0 / nf && centerable,
    );

    let e1 = vecops::basis(n_max, 0);
    let to_theta = norm.norm(&e1);
    let others = set.points()[1..].iter().map(|p| norm.dist(&e1, p)).fold(0.0, f64::max);
    let far = set.farthest_set(&e1, sets::DEFAULT_ACHIEVER_TOL)?;
    rep.check(
        "‖e_1 − x_n‖ = ‖e_1 − y_n‖ < 3/2 = ‖e_1 − θ‖, so θ is the farthest point from e_1",
        "max < 1.5, farthest set [0]",
        format!("‖e_1 − θ‖ = {to_theta}, max other {others}, farthest {:?}", far.achievers),
        to_theta == 1.5 && others < 1.5 && far.achievers == [0],
    );
    Ok(rep)
}

/// `s_p = 1/(1 + 2^{1/(p−1)})`, the coordinate of the center of `{e_1, e_2, e_3}`
/// in `ℓ_p³`.
pub fn sp_closed_form(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if p.is_infinite() {
        return Ok(0.5);
    }
    Ok(1.0 / (1.0 + 2f64.powf(1.0 / (p - 1.0))))
}

/// `{e_1, e_2, e_3, x_p}` in `ℓ_p³`, `x_p = (s_p, s_p, s_p)`.
pub fn ap_set(p: f64) -> Result<PointSet> {
    let s = sp_closed_form(p)?;
    let mut pts: Vec<Vector> = (0..3).map(|k| vecops::basis(3, k)).collect();
    pts.push(vec![s; 3]);
    PointSet::new(NormSpec::pnorm(3, p)?, pts)
}

/// Signed slack `3(t ∓ s_p)^p − ((t ∓ 1)^p + 2t^p)`; positive means `x_p` is
/// strictly farthest from `∓(t, t, t)`.
pub fn ap_slack(p: f64, t: f64) -> Result<f64> {
    let s = sp_closed_form(p)?;
    let sign = if p < 2.0 { -1.0 } else { 1.0 };
    Ok(3.0 * (t + sign * s).powf(p) - ((t + sign).powf(p) + 2.0 * t.powf(p)))
}

/// Smallest `t > 1` (to relative accuracy 1e-9) beyond which the slack stays
/// positive, found by doubling then bisection. `None` for `p = 2`.
pub fn ap_threshold_t(p: f64) -> Result<Option<f64>> {
    if p == 2.0 {
        return Ok(None);
    }
    let mut hi = 2.0;
    while ap_slack(p, hi)? <= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Ok(None);
        }
    }
    let mut lo = 1.0;
    if ap_slack(p, lo)? > 0.0 {
        return Ok(Some(lo));
    }
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if ap_slack(p, mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

fn ap_viewpoint(p: f64, t: f64) -> Vector {
    if p < 2.0 {
        vec![t; 3]
    } else {
        vec![-t; 3]
    }
}

fn check_ap_params(p: f64, t: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(p));
    }
    if p == 2.0 {
        return Err(Error::Precondition("p = 2 is the Hilbert case, where no such witness exists".into()));
    }
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::Precondition(format!("needs t > 1, got {t}")));
    }
    Ok(())
}

/// `x_p` is the Chebyshev center of `A_p` and its farthest point from
/// `(t, t, t)` when `p < 2`, or from `(−t, −t, −t)` when `p > 2`.
pub fn ap_ccf_check(p: f64, t: f64, opts: &SolverOptions) -> Result<ExampleReport> {
    check_ap_params(p, t)?;
    let s = sp_closed_form(p)?;
    let set = ap_set(p)?;
    let y = ap_viewpoint(p, t);
    let below = p < 2.0;
    let mut rep = ExampleReport::new("ap_witness");
    rep.param("p", json!(p));
    rep.param("t", json!(t));
    rep.param("s_p", json!(s));
    rep.param("viewpoint", json!(y));
    rep.param("threshold_t", json!(ap_threshold_t(p)?));

    let third = 1.0 / 3.0;
    rep.check(
        if below { "0 < s_p < 1/3" } else { "s_p > 1/3" },
        if below { "(0, 1/3)" } else { "> 1/3" },
        format!("{s}"),
        if below { s > 0.0 && s < third } else { s > third },
    );
    // the derivative comparison at τ = 1/t = 0
    let (d1, d2) = if below { (-p, -3.0 * p * s) } else { (p, 3.0 * p * s) };
    rep.check("slope comparison at τ = 0 gives the inequality for large t", format!("{d1} < {d2}"), format!("{d1} vs {d2}"), d1 < d2);

    let res = solver::chebyshev_center(&set, opts)?;
    let off = res.center.iter().map(|c| (c - s).abs()).fold(0.0, f64::max);
    let rx = set.outer_radius(&[s; 3])?;
    rep.param("solver_center", json!(res.center));
    rep.param("solver_gap", json!(res.gap));
    rep.check(
        "solver center of A_p is x_p",
        "coordinatewise within 1e-4, r(x_p) ≤ r + 1e-6",
        format!("max deviation {off:e}, r(x_p) = {rx}, r = {}", res.radius),
        off <= 1e-4 && rx <= res.radius + 1e-6,
    );

    let sign = if below { -1.0 } else { 1.0 };
    let lhs = (t + sign).powf(p) + 2.0 * t.powf(p);
    let rhs = 3.0 * (t + sign * s).powf(p);
    let ineq = if below { "(t−1)^p + 2t^p < 3(t−s_p)^p" } else { "(t+1)^p + 2t^p < 3(t+s_p)^p" };
    rep.check(
        ineq,
        "strict",
        format!("{lhs} vs {rhs}{}", if lhs < rhs { "" } else { "; increase t" }),
        lhs < rhs,
    );

    let to_basis = set.norm().dist(&y, &vecops::basis(3, 0));
    let to_center = set.norm().dist(&y, &[s; 3]);
    let formula_ok = (to_basis - lhs.powf(1.0 / p)).abs() <= 1e-12 * to_basis
        && (to_center - 3f64.powf(1.0 / p) * (t + sign * s)).abs() <= 1e-12 * to_center;
    rep.check(
        "distances from y match ((t∓1)^p + 2t^p)^{1/p} and 3^{1/p}(t∓s_p)",
        "relative 1e-12",
        format!("{to_basis}, {to_center}"),
        formula_ok,
    );

    let w = ccf::CcfWitness::new(set, 3, y)?;
    let v = ccf::verify_ccf_witness(&w, opts)?;
    rep.param("strict_margin", json!(v.strict_margin));
    rep.check("witness verified", "confirmed", format!("{:?}", v.verdict), v.verdict == Verdict::Confirmed);
    Ok(rep)
}

/// Finite discrete measure space with atom weights `μ_i`, norm
/// `‖f‖ = (Σ μ_i |f_i|^p)^{1/p}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedLpSpace {
    pub p: f64,
    pub atom_weights: Vec<f64>,
}

impl WeightedLpSpace {
    pub fn new(p: f64, atom_weights: Vec<f64>) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::InvalidExponent(p));
        }
        if atom_weights.is_empty() || atom_weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidWeight);
        }
        Ok(Self { p, atom_weights })
    }

    /// `μ(cell)`.
    pub fn measure(&self, cell: &[usize]) -> f64 {
        cell.iter().map(|&i| self.atom_weights[i]).sum()
    }
}

impl Norm for WeightedLpSpace {
    fn dim(&self) -> usize {
        self.atom_weights.len()
    }

    fn norm(&self, x: &[f64]) -> f64 {
        let m = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        if m == 0.0 {
            return 0.0;
        }
        let s: f64 = x.iter().zip(&self.atom_weights).map(|(v, w)| w * (v.abs() / m).powf(self.p)).sum();
        m * s.powf(1.0 / self.p)
    }

    fn subgradient(&self, x: &[f64]) -> Vector {
        let n = self.norm(x);
        if n == 0.0 {
            return vec![0.0; x.len()];
        }
        x.iter()
            .zip(&self.atom_weights)
            .map(|(v, w)| if *v == 0.0 { 0.0 } else { w * v.signum() * (v.abs() / n).powf(self.p - 1.0) })
            .collect()
    }

    fn linf_lower(&self) -> f64 {
        self.atom_weights.iter().copied().fold(f64::INFINITY, f64::min).powf(1.0 / self.p)
    }
}

/// Three disjoint nonempty cells of atoms.
pub type Cells = [Vec<usize>; 3];

/// `T x = Σ x_i f_i` with `f_i = 1_{Δ_i}/μ(Δ_i)^{1/p}`.
pub fn embed(space: &WeightedLpSpace, cells: &Cells, x: &[f64]) -> Vector {
    let mut f = vec![0.0; space.dim()];
    for (i, cell) in cells.iter().enumerate() {
        let scale = space.measure(cell).powf(-1.0 / space.p);
        for &a in cell {
            f[a] = x[i] * scale;
        }
    }
    f
}

/// Coefficients of `P f` in the basis `f_i`: `μ(Δ_i)^{1/p} · (∫_{Δ_i} f dμ)/μ(Δ_i)`.
pub fn project_coefficients(space: &WeightedLpSpace, cells: &Cells, f: &[f64]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, cell) in cells.iter().enumerate() {
        let mu = space.measure(cell);
        let avg = cell.iter().map(|&a| space.atom_weights[a] * f[a]).sum::<f64>() / mu;
        out[i] = avg * mu.powf(1.0 / space.p);
    }
    out
}

/// `P f` as a function on the atoms: the cell averages on each cell, zero
/// off the cells.
pub fn project(space: &WeightedLpSpace, cells: &Cells, f: &[f64]) -> Vector {
    embed(space, cells, &project_coefficients(space, cells, f))
}

/// [`embed_lp3_cells`] with single-atom cells.
pub fn embed_lp3(
    space: &WeightedLpSpace,
    atoms: [usize; 3],
    test_vectors: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<ExampleReport> {
    embed_lp3_cells(space, &atoms.map(|a| vec![a]), test_vectors, seed, opts)
}

/// Checks that `T` is an isometry from `ℓ_p³`, that `P` is a norm-one
/// projection onto its range, and that the `ℓ_p³` witness survives the
/// embedding: `T x_p` is the center of `T(A_p)` and farthest from `T y` in
/// the whole space, not just in the range of `T`.
pub fn embed_lp3_cells(
    space: &WeightedLpSpace,
    cells: &Cells,
    test_vectors: usize,
    seed: u64,
    opts: &SolverOptions,
) -> Result<ExampleReport> {
    let m = space.dim();
    let mut seen = vec![false; m];
    for cell in cells {
        if cell.is_empty() {
            return Err(Error::Precondition("cells must be nonempty".into()));
        }
        for &a in cell {
            if a >= m {
                return Err(Error::IndexOutOfRange { index: a, len: m });
            }
            if seen[a] {
                return Err(Error::Precondition(format!("atom {a} used twice")));
            }
            seen[a] = true;
        }
    }
    let p = space.p;
    let lp3 = NormSpec::pnorm(3, p)?;
    let mut rep = ExampleReport::new("lp_embedding");
    rep.param("p", json!(p));
    rep.param("atom_weights", json!(space.atom_weights));
    rep.param("cells", json!(cells));
    rep.param("test_vectors", json!(test_vectors));
    rep.param("seed", json!(seed));

    let mut g = rng::stream_rng(seed, 0);
    let mut iso_dev = 0.0_f64;
    let mut inv_dev = 0.0_f64;
    for _ in 0..test_vectors {
        let x = rng::uniform_in_cube(&mut g, &[0.0; 3], 1.0);
        let tx = embed(space, cells, &x);
        iso_dev = iso_dev.max((space.norm(&tx) - lp3.norm(&x)).abs());
        let back = project_coefficients(space, cells, &tx);
        inv_dev = inv_dev.max(back.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    rep.check("‖T x‖ = ‖x‖_p on sampled x", "deviation ≤ 1e-12", format!("{iso_dev:e}"), iso_dev <= 1e-12);
    rep.check("P T x = x on sampled x", "deviation ≤ 1e-12", format!("{inv_dev:e}"), inv_dev <= 1e-12);

    let mut g = rng::stream_rng(seed, 1);
    let mut worst_ratio = 0.0_f64;
    for _ in 0..test_vectors {
        let f = rng::uniform_in_cube(&mut g, &vec![0.0; m], 1.0);
        let nf = space.norm(&f);
        if nf > 0.0 {
            worst_ratio = worst_ratio.max(space.norm(&project(space, cells, &f)) / nf);
        }
    }
    rep.check("‖P f‖ ≤ ‖f‖ on sampled f", "ratio ≤ 1 + 1e-12", format!("max ratio {worst_ratio}"), worst_ratio <= 1.0 + 1e-12);

    if p == 2.0 {
        rep.param("witness", json!("not applicable for p = 2"));
        return Ok(rep);
    }
    let t = 100.0;
    let ap = ap_set(p)?;
    let image: Vec<Vector> = ap.points().iter().map(|a| embed(space, cells, a)).collect();
    let ty = embed(space, cells, &ap_viewpoint(p, t));
    rep.param("witness_t", json!(t));
    let v = ccf::verify_witness_points(space, &image, 3, &ty, 1e-6, sets::DEFAULT_ACHIEVER_TOL, opts)?;
    rep.param("witness_strict_margin", json!(v.strict_margin));
    rep.param("witness_solver_radius", json!(v.chebyshev_radius));
    rep.check(
        "T x_p is the center of T(A_p) and its farthest point from T y",
        "confirmed",
        format!("{:?}, r(T x_p) = {}, r = {}", v.verdict, v.candidate_radius, v.chebyshev_radius),
        v.verdict == Verdict::Confirmed,
    );
    Ok(rep)
}
