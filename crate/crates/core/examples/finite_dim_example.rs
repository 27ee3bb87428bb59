//! The finite-dimensional space with norm Σ|x_i| + ½|x|₂: θ is a center of
//! the basis vectors together with θ, and it is their farthest point from
//! (1, …, 1).

use ccflab::constructions;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let rep = constructions::example_finite_dim(n, &SolverOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    Ok(())
}
