//! Sampled r_{t,z}/t over directions and radii: near 1 for the l1 plane,
//! clearly below 1 for the Euclidean plane.

use ccflab::ccf;
use ccflab::norms::NormSpec;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let t_grid = [0.25, 0.5, 1.0];
    let opts = SolverOptions::default();
    for (name, norm) in [("l1", NormSpec::pnorm(2, 1.0)?), ("l2", NormSpec::euclidean(2)), ("l4", NormSpec::pnorm(2, 4.0)?)] {
        let table = ccf::ccnf_scan(&norm, 8, &t_grid, 4000, 0, &opts)?;
        let s = &table.summary;
        println!("{name}: max ratio {:.5} at cell {} -> {:?}", s.max_ratio, s.argmax, s.verdict);
    }
    let table = ccf::ccnf_scan(&NormSpec::euclidean(2), 2, &[0.5], 2000, 0, &opts)?;
    print!("{}", table.to_csv()?);
    Ok(())
}
