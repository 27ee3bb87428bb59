//! A center that is also a farthest point: confirmed in the l1 plane, refuted
//! in the Euclidean plane, and pushed further out by amplification.

use ccflab::ccf::{self, CcfWitness};
use ccflab::norms::NormSpec;
use ccflab::sets::PointSet;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let opts = SolverOptions::default();
    let points = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]];
    for (name, norm) in [("l1", NormSpec::pnorm(2, 1.0)?), ("l2", NormSpec::euclidean(2))] {
        let set = PointSet::new(norm, points.clone())?;
        let rep = ccf::verify_ccf_witness(&CcfWitness::new(set, 2, vec![0.0, 0.0])?, &opts)?;
        println!(
            "{name}: {:?} (r = {:.6}, ‖y − c‖ = {:.6}, r(y) = {:.6})",
            rep.verdict, rep.chebyshev_radius, rep.viewpoint_distance, rep.viewpoint_radius
        );
    }
    let set = PointSet::new(NormSpec::pnorm(2, 1.0)?, points)?;
    for t in [2.0, 10.0] {
        let y = ccf::amplify_witness(&set, &[0.5, 0.5], &[0.0, 0.0], t)?;
        let rep = ccf::verify_ccf_witness(&CcfWitness::new(set.clone(), 2, y.clone())?, &opts)?;
        println!("amplified t = {t}: y = {y:?} -> {:?}", rep.verdict);
    }
    Ok(())
}
