//! Evaluating norms and measuring how far each family is from strict convexity.

use ccflab::norms::{Norm, NormSpec};

fn main() -> ccflab::error::Result<()> {
    let norms = [
        ("l1", NormSpec::pnorm(2, 1.0)?),
        ("l2", NormSpec::euclidean(2)),
        ("l3", NormSpec::pnorm(2, 3.0)?),
        ("linf", NormSpec::pnorm(2, f64::INFINITY)?),
        ("l1 + l2/2", NormSpec::sum(2, vec![(1.0, NormSpec::pnorm(2, 1.0)?), (0.5, NormSpec::euclidean(2))])?),
        ("sup + weighted l2", NormSpec::sup_plus_weighted_l2(vec![0.25, 0.0625])?),
    ];
    let x = [3.0, -4.0];
    // two unit vectors on a common face of the l1 and linf balls
    let (u, v) = ([1.0, 0.0], [0.5, 0.5]);
    println!("{:<18} {:>10} {:>12} {:>8}", "norm", "|(3,-4)|", "defect(u,v)", "strict");
    for (name, n) in &norms {
        let (nu, nv) = (n.norm(&u), n.norm(&v));
        let defect = n.convexity_defect(&[u[0] / nu, u[1] / nu], &[v[0] / nv, v[1] / nv])?;
        println!("{name:<18} {:>10.6} {defect:>12.3e} {:>8}", n.norm(&x), n.is_strictly_convex_family());
    }
    println!("json: {}", serde_json::to_string(&norms[4].1).unwrap());
    Ok(())
}
