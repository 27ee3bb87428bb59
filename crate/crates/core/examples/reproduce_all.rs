//! Rebuilds every construction and scan into a report directory.

use ccflab::cli;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "reports".into());
    let rows = cli::reproduce_all(dir.as_ref(), 0, 5000, &SolverOptions::default())?;
    for r in &rows {
        println!("{} {:<16} {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.note);
    }
    println!("written to {dir}/");
    Ok(())
}
