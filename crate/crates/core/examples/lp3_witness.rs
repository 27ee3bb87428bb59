//! The three-dimensional lp witness: the center of the basis vectors, the
//! threshold on t, and the full check at t = 100.

use ccflab::constructions;
use ccflab::solver::SolverOptions;

fn main() -> ccflab::error::Result<()> {
    let opts = SolverOptions::default();
    for p in [1.5, 3.0, 4.0] {
        let s = constructions::sp_closed_form(p)?;
        let threshold = constructions::ap_threshold_t(p)?.unwrap();
        let rep = constructions::ap_ccf_check(p, 100.0, &opts)?;
        println!("p = {p}: s_p = {s:.6}, slack positive from t = {threshold:.4}, t = 100 passes: {}", rep.overall);
        for c in &rep.checks {
            println!("    [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.description);
        }
    }
    Ok(())
}
