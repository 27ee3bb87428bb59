//! Farthest-point queries and the distance table as CSV.

use ccflab::norms::NormSpec;
use ccflab::sets::PointSet;

fn main() -> ccflab::error::Result<()> {
    let set = PointSet::new(NormSpec::pnorm(2, f64::INFINITY)?, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0]])?;
    for y in [vec![0.0, 0.0], vec![2.0, 0.0], vec![0.5, -3.0]] {
        let q = set.farthest_set(&y, 1e-9)?;
        println!("from {y:?}: radius {} achieved by {:?}", q.radius, q.achievers);
    }
    print!("{}", set.distance_csv(&[vec![0.0, 0.0], vec![2.0, 0.0]])?);
    Ok(())
}
