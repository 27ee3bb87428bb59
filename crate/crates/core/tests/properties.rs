use proptest::prelude::*;

use ccflab::ccf::{self, CcfWitness, Verdict};
use ccflab::constructions;
use ccflab::norms::{Norm, NormSpec};
use ccflab::sets::{self, PointSet};
use ccflab::solver::{self, SolverOptions};
use ccflab::vecops::{self, Vector};

fn any_norm(dim: usize) -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        (1.0f64..8.0).prop_map(move |p| NormSpec::pnorm(dim, p).unwrap()),
        Just(NormSpec::pnorm(dim, 1.0).unwrap()),
        Just(NormSpec::pnorm(dim, f64::INFINITY).unwrap()),
        (0.1f64..2.0, 1.0f64..4.0).prop_map(move |(w, p)| {
            NormSpec::sum(dim, vec![(1.0, NormSpec::pnorm(dim, 1.0).unwrap()), (w, NormSpec::pnorm(dim, p).unwrap())])
                .unwrap()
        }),
        prop::collection::vec(0.05f64..2.0, dim).prop_map(|w| NormSpec::sup_plus_weighted_l2(w).unwrap()),
    ]
}

fn vector(dim: usize, half: f64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-half..half, dim)
}

fn norm_and_points(max_dim: usize, max_points: usize) -> impl Strategy<Value = (NormSpec, Vec<Vector>)> {
    (1..=max_dim).prop_flat_map(move |dim| (any_norm(dim), prop::collection::vec(vector(dim, 2.0), 2..=max_points)))
}

fn distinct(points: &[Vector]) -> bool {
    points.iter().any(|p| p != &points[0])
}

fn solver_opts() -> SolverOptions {
    SolverOptions { max_iters: 3000, ..SolverOptions::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_axioms((norm, xy) in (1usize..=5).prop_flat_map(|d| (any_norm(d), (vector(d, 10.0), vector(d, 10.0)))), lambda in -5.0f64..5.0) {
        let (x, y) = xy;
        let nx = norm.norm(&x);
        prop_assert!(nx >= 0.0);
        let scaled = vecops::scale(&x, lambda);
        prop_assert!((norm.norm(&scaled) - lambda.abs() * nx).abs() <= 1e-12 * (1.0 + nx) * (1.0 + lambda.abs()));
        prop_assert!(norm.norm(&vecops::add(&x, &y)) <= nx + norm.norm(&y) + 1e-12 * (1.0 + nx + norm.norm(&y)));
        if nx == 0.0 {
            prop_assert!(x.iter().all(|c| *c == 0.0));
        }
    }

    #[test]
    fn strictly_convex_families_have_positive_defect(
        (norm, angles) in (2usize..=4).prop_flat_map(|d| (any_norm(d), (vector(d, 1.0), vector(d, 1.0))))
    ) {
        prop_assume!(norm.is_strictly_convex_family());
        let (u, v) = angles;
        prop_assume!(vecops::l2(&u) > 0.1 && vecops::l2(&v) > 0.1);
        let u = vecops::scale(&u, 1.0 / norm.norm(&u));
        let v = vecops::scale(&v, 1.0 / norm.norm(&v));
        // keep clear of collinear pairs
        let cos = vecops::dot(&u, &v) / (vecops::l2(&u) * vecops::l2(&v));
        prop_assume!(cos.abs() < 0.99);
        prop_assert!(norm.convexity_defect(&u, &v).unwrap() > 1e-14);
    }

    #[test]
    fn polyhedral_faces_have_zero_defect(a in 0u32..=64, b in 0u32..=64) {
        prop_assume!(a != b);
        let (a, b) = (a as f64 / 64.0, b as f64 / 64.0);
        let l1 = NormSpec::pnorm(2, 1.0).unwrap();
        prop_assert_eq!(l1.convexity_defect(&[a, 1.0 - a], &[b, 1.0 - b]).unwrap(), 0.0);
        let linf = NormSpec::pnorm(2, f64::INFINITY).unwrap();
        prop_assert_eq!(linf.convexity_defect(&[1.0, a], &[1.0, b]).unwrap(), 0.0);
    }

    #[test]
    fn outer_radius_is_lipschitz_and_above_half_diameter(
        (norm, pts, x, y) in norm_and_points(4, 8).prop_flat_map(|(n, p)| {
            let d = n.dim();
            (Just(n), Just(p), vector(d, 5.0), vector(d, 5.0))
        })
    ) {
        let rx = sets::outer_radius(&norm, &pts, &x);
        let ry = sets::outer_radius(&norm, &pts, &y);
        prop_assert!((rx - ry).abs() <= norm.dist(&x, &y) * (1.0 + 1e-12) + 1e-12);
        prop_assert!(rx >= 0.5 * sets::diameter(&norm, &pts) * (1.0 - 1e-12));
    }

    #[test]
    fn outer_radius_is_translation_invariant(
        (norm, pts, x, h) in norm_and_points(4, 8).prop_flat_map(|(n, p)| {
            let d = n.dim();
            (Just(n), Just(p), vector(d, 5.0), vector(d, 5.0))
        })
    ) {
        let shifted: Vec<Vector> = pts.iter().map(|a| vecops::add(a, &h)).collect();
        let r0 = sets::outer_radius(&norm, &pts, &x);
        let r1 = sets::outer_radius(&norm, &shifted, &vecops::add(&x, &h));
        prop_assert!((r0 - r1).abs() <= 1e-12 * (1.0 + r0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn solver_radius_bracketed_and_trace_monotone((norm, pts) in norm_and_points(3, 6)) {
        prop_assume!(distinct(&pts));
        let res = solver::solve(&norm, &pts, &solver_opts(), None).unwrap();
        prop_assert!(res.lower_bound <= res.radius);
        prop_assert!(res.radius >= 0.5 * sets::diameter(&norm, &pts) * (1.0 - 1e-12));
        let best_point = pts.iter().map(|a| sets::outer_radius(&norm, &pts, a)).fold(f64::INFINITY, f64::min);
        prop_assert!(res.radius <= best_point + 1e-12);
        prop_assert!((sets::outer_radius(&norm, &pts, &res.center) - res.radius).abs() <= 1e-12 * (1.0 + res.radius));
        prop_assert!(res.trace.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn solver_is_translation_and_scaling_equivariant(
        (norm, pts, h) in norm_and_points(3, 6).prop_flat_map(|(n, p)| {
            let d = n.dim();
            (Just(n), Just(p), vector(d, 3.0))
        }),
        big_r in 0.1f64..10.0,
    ) {
        prop_assume!(distinct(&pts));
        let opts = solver_opts();
        let base = solver::solve(&norm, &pts, &opts, None).unwrap();
        // the map x ↦ (x − h)/R divides every distance by R
        let mapped: Vec<Vector> = pts.iter().map(|a| vecops::scale(&vecops::sub(a, &h), 1.0 / big_r)).collect();
        let res = solver::solve(&norm, &mapped, &opts, None).unwrap();
        let slack = base.gap / big_r + res.gap + 1e-9 * (1.0 + base.radius / big_r);
        prop_assert!((res.radius - base.radius / big_r).abs() <= slack,
            "{} vs {} (slack {slack})", res.radius, base.radius / big_r);
    }

    #[test]
    fn euclidean_squared_lower_bound(
        (pts, xs) in (2usize..=4).prop_flat_map(|d| (prop::collection::vec(vector(d, 1.0), 2..=8), prop::collection::vec(vector(d, 3.0), 5)))
    ) {
        prop_assume!(distinct(&pts));
        let opts = SolverOptions::default();
        let norm = NormSpec::euclidean(pts[0].len());
        let res = solver::solve(&norm, &pts, &opts, None).unwrap();
        for x in &xs {
            let rx = sets::outer_radius(&norm, &pts, x);
            let d = vecops::l2(&vecops::sub(x, &res.center));
            prop_assert!(rx * rx >= res.radius * res.radius + d * d - 5.0 * opts.tol);
        }
    }

    #[test]
    fn strictly_convex_starts_agree(
        (p, pts) in (1.5f64..4.0).prop_flat_map(|p| (Just(p), prop::collection::vec(vector(2, 1.0), 3..=6)))
    ) {
        prop_assume!(distinct(&pts));
        let norm = NormSpec::pnorm(2, p).unwrap();
        let opts = SolverOptions::default();
        let res = solver::solve(&norm, &pts, &opts, None).unwrap();
        prop_assert!(res.multi_start_spread <= 10.0 * opts.tol, "spread {}", res.multi_start_spread);
    }

    #[test]
    fn amplified_witness_stays_confirmed(shift in vector(2, 5.0), scale in 0.2f64..5.0) {
        // ℓ1 segment witness: the midpoint is a center and farthest from θ
        let norm = NormSpec::pnorm(2, 1.0).unwrap();
        let map = |x: &[f64]| vecops::add(&vecops::scale(x, scale), &shift);
        let pts = vec![map(&[1.0, 0.0]), map(&[0.0, 1.0]), map(&[0.5, 0.5])];
        let set = PointSet::new(norm, pts).unwrap();
        let z = map(&[0.0, 0.0]);
        let opts = SolverOptions::default();
        let base = ccf::verify_ccf_witness(&CcfWitness::new(set.clone(), 2, z.clone()).unwrap(), &opts).unwrap();
        prop_assert_eq!(base.verdict, Verdict::Confirmed);
        let c = set.points()[2].clone();
        for t in [2.0, 5.0, 10.0] {
            let y = ccf::amplify_witness(&set, &c, &z, t).unwrap();
            let rep = ccf::verify_ccf_witness(&CcfWitness::new(set.clone(), 2, y).unwrap(), &opts).unwrap();
            prop_assert_eq!(rep.verdict, Verdict::Confirmed);
        }
    }

    #[test]
    fn r_hat_at_most_t_and_grows_with_samples(
        p in 1.0f64..6.0, angle in 0.0f64..std::f64::consts::TAU, t in 0.1f64..1.0, seed in any::<u64>()
    ) {
        let norm = NormSpec::pnorm(2, p).unwrap();
        let v = [angle.cos(), angle.sin()];
        let z = vecops::scale(&v, 1.0 / norm.norm(&v));
        let opts = SolverOptions { max_iters: 2000, ..SolverOptions::default() };
        let small = ccf::estimate_r_tz(&norm, &z, t, 400, &opts, seed).unwrap();
        let large = ccf::estimate_r_tz(&norm, &z, t, 1600, &opts, seed).unwrap();
        prop_assert!(small.r_hat <= t * (1.0 + 1e-12) && large.r_hat <= t * (1.0 + 1e-12));
        // the larger sample contains the smaller one
        prop_assert!(large.r_hat >= small.r_hat - small.gap - large.gap - 1e-9);
    }

    #[test]
    fn sp_matches_line_search(log_p in (1.1f64).ln()..(10.0f64).ln()) {
        let p = log_p.exp();
        let set = PointSet::new(NormSpec::pnorm(3, p).unwrap(), (0..3).map(|k| vecops::basis(3, k)).collect()).unwrap();
        let m = solver::symmetric_line_minimize(&set, &[1.0, 1.0, 1.0], &SolverOptions::default()).unwrap();
        let closed = constructions::sp_closed_form(p).unwrap();
        prop_assert!((m.s - closed).abs() <= 1e-8, "p = {p}: {} vs {closed}", m.s);
    }

    #[test]
    fn ap_slack_positive_and_increasing_past_threshold(p in prop_oneof![1.1f64..1.95, 2.05f64..8.0], steps in prop::collection::vec(0.1f64..50.0, 1..6)) {
        let start = constructions::ap_threshold_t(p).unwrap().unwrap();
        let mut t = start * (1.0 + 1e-6);
        let mut prev = constructions::ap_slack(p, t).unwrap();
        prop_assert!(prev > 0.0);
        for dt in steps {
            t += dt;
            let s = constructions::ap_slack(p, t).unwrap();
            prop_assert!(s > prev, "p = {p}, t = {t}: {s} ≤ {prev}");
            prev = s;
        }
    }
}

#[test]
fn two_ball_properties_hold_on_ap_witnesses() {
    let opts = SolverOptions::default();
    for p in [1.5, 3.0, 4.0] {
        let set = constructions::ap_set(p).unwrap();
        let c = set.points()[3].clone();
        let y = if p < 2.0 { vec![100.0; 3] } else { vec![-100.0; 3] };
        let r = set.outer_radius(&c).unwrap();
        let u = ccf::build_two_ball_set(&set, &c, r, &y).unwrap();
        let rep = ccf::check_two_ball_properties(&u, &set, 2000, &opts).unwrap();
        assert!(rep.all_pass, "p = {p}: {rep:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = SolverOptions::default();
    let a = serde_json::to_string(&constructions::example_finite_dim(4, &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&constructions::example_finite_dim(4, &opts).unwrap()).unwrap();
    assert_eq!(a, b);
    let space = constructions::WeightedLpSpace::new(3.0, vec![2.0, 0.5, 1.0, 3.0]).unwrap();
    let a = serde_json::to_string(&constructions::embed_lp3(&space, [0, 1, 2], 50, 9, &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&constructions::embed_lp3(&space, [0, 1, 2], 50, 9, &opts).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn euclidean_oracle_centers_agree() {
    // with r(x)² ≥ r² + ‖x − c‖², an oracle point within δ of the optimum
    // is within sqrt(2rδ + δ²) of the unique center
    let norm = NormSpec::euclidean(2);
    for k in 0..10u64 {
        let mut g = ccflab::rng::stream_rng(3, k);
        let pts: Vec<Vector> = (0..5).map(|_| ccflab::rng::uniform_in_cube(&mut g, &[0.0, 0.0], 1.0)).collect();
        let set = PointSet::new(norm.clone(), pts).unwrap();
        let res = solver::chebyshev_center(&set, &SolverOptions::default()).unwrap();
        let oracle = solver::brute_force_center(&set, &[-1.5, -1.5], &[1.5, 1.5], 21, 5).unwrap();
        let delta = oracle.radius - res.lower_bound;
        let allowed = (2.0 * res.radius * delta + delta * delta).sqrt();
        let dist = vecops::l2(&vecops::sub(&oracle.center, &res.center));
        assert!(dist <= allowed + 1e-9, "set {k}: {dist} > {allowed}");
    }
}
