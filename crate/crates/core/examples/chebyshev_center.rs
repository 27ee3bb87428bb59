//! Chebyshev center of a small set under several norms, checked against the
//! grid oracle.

use ccflab::norms::NormSpec;
use ccflab::sets::PointSet;
use ccflab::solver::{self, SolverOptions};

fn main() -> ccflab::error::Result<()> {
    let points = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.5, 1.5], vec![1.8, 1.2]];
    let opts = SolverOptions::default();
    for p in [1.0, 1.5, 2.0, 4.0, f64::INFINITY] {
        let set = PointSet::new(NormSpec::pnorm(2, p)?, points.clone())?;
        let res = solver::chebyshev_center(&set, &opts)?;
        let oracle = solver::brute_force_center(&set, &[-0.5, -0.5], &[2.5, 2.0], 21, 4)?;
        println!(
            "p = {p:<4} center ({:.5}, {:.5}) r = {:.6} gap {:.1e} certified {} | oracle r = {:.6}",
            res.center[0], res.center[1], res.radius, res.gap, res.certified, oracle.radius
        );
    }
    Ok(())
}
