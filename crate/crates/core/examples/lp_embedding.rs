//! Carrying the lp witness into a weighted L_p space on four atoms through an
//! isometric embedding with a norm-one projection.

use ccflab::constructions::{self, WeightedLpSpace};
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let space = WeightedLpSpace::new(3.0, vec![2.0, 0.5, 1.0, 3.0])?;
    let rep = constructions::embed_lp3(&space, [0, 1, 2], 1000, 0, &SolverOptions::default())?;
    for c in &rep.checks {
        println!("[{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.description, c.observed);
    }
    // cells of several atoms work the same way
    let cells = [vec![0, 3], vec![1], vec![2]];
    let rep = constructions::embed_lp3_cells(&space, &cells, 200, 1, &SolverOptions::default())?;
    println!("multi-atom cells: pass {}", rep.overall);
    Ok(())
}
