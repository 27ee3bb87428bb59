//! The two-ball set U = B[c, r] ∩ B[y, R] around a confirmed witness, and a
//! sampled check that it keeps the radius, the center and the farthest point.

use ccflab::ccf;
use ccflab::norms::NormSpec;
use ccflab::sets::PointSet;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let set = PointSet::new(NormSpec::pnorm(2, 1.0)?, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]])?;
    let (c, y) = (vec![0.5, 0.5], vec![0.0, 0.0]);
    for r in [1.0, 0.5] {
        let u = ccf::build_two_ball_set(&set, &c, r, &y)?;
        let rep = ccf::check_two_ball_properties(&u, &set, 4000, &SolverOptions::default())?;
        println!(
            "r = {r}: contains set {}, radius kept {}, center kept {}, farthest kept {} ({} sample points)",
            rep.contains_set, rep.radius_preserved, rep.center_preserved, rep.farthest_preserved, rep.sample_size
        );
    }
    Ok(())
}
