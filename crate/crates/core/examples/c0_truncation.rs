//! Truncations of the c0 example: the radius approaches 1 and θ stays the
//! farthest point from e_1.

use ccflab::constructions;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    for n in [5, 10, 20] {
        let rep = constructions::example_c0_truncated(n, &SolverOptions::default())?;
        println!("N = {n}: pass {}, solver radius {}", rep.overall, rep.parameters["solver_radius"]);
    }
    Ok(())
}
