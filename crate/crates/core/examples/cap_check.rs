//! The cap cut from the unit circle by a chord stays within half the chord
//! length of the chord midpoint.

use ccflab::ccf;
use ccflab::norms::{Norm, NormSpec};

fn main() -> ccflab::error::Result<()> {
    for p in [1.5, 2.0, 3.0] {
        let norm = NormSpec::pnorm(2, p)?;
        let unit = |a: f64| {
            let v = [a.cos(), a.sin()];
            let n = norm.norm(&v);
            vec![v[0] / n, v[1] / n]
        };
        let rep = ccf::cap_containment_check(&norm, &unit(0.2), &unit(1.4), 256)?;
        println!("p = {p}: r = {:.6}, max distance {:.6}, excess {:.2e}", rep.r, rep.max_distance, rep.max_excess);
    }
    Ok(())
}
