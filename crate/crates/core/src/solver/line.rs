//! One-dimensional minimization of `s ↦ r(s·d, A)`.

use serde::{Deserialize, Serialize};

use super::SolverOptions;
use crate::error::{Error, Result};
use crate::norms::Norm;
use crate::sets::{self, PointSet};
use crate::vecops::{self, Vector};

const SCAN_POINTS: usize = 201;
const DENSE_SCAN_POINTS: usize = 20_001;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineMinimum {
    pub s: f64,
    pub radius: f64,
    /// The coarse scan was not unimodal and a dense scan picked the bracket.
    pub fallback: bool,
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns `(x, f(x))`. Stops when the bracket is shorter than `tol` or
/// stops shrinking in floating point.
pub fn golden_section_minimize<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if !(c < d) {
            break;
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimizes `s ↦ r(s·direction, A)`.
///
/// The bracket `[−S, S]` with `S = (r(θ, A) + min_a ‖a‖)/‖d‖` contains every
/// minimizer. A coarse scan locates the basin; golden section narrows it, and
/// bisection on the sign of the one-sided slope finishes to `1e-10` in `s`,
/// below what golden section can resolve on a flat minimum.
pub fn symmetric_line_minimize(set: &PointSet, direction: &[f64], opts: &SolverOptions) -> Result<LineMinimum> {
    opts.validate()?;
    let norm = set.norm();
    sets::check_point(norm, direction)?;
    let dn = norm.norm(direction);
    if dn == 0.0 {
        return Err(Error::ZeroVector);
    }
    let pts = set.points();
    let origin = vec![0.0; set.dim()];
    let r0 = sets::outer_radius(norm, pts, &origin);
    let amin = pts.iter().map(|a| norm.norm(a)).fold(f64::INFINITY, f64::min);
    let span = ((r0 + amin) / dn).max(f64::MIN_POSITIVE);
    let at = |s: f64| -> Vector { direction.iter().map(|d| s * d).collect() };
    let f = |s: f64| sets::outer_radius(norm, pts, &at(s));

    let (mut lo, mut hi, fallback) = match bracket(&f, -span, span, SCAN_POINTS) {
        Some((lo, hi)) => (lo, hi, false),
        None => {
            let (lo, hi) = dense_bracket(&f, -span, span);
            (lo, hi, true)
        }
    };
    let (s_gs, _) = golden_section_minimize(&f, lo, hi, 1e-12 * (1.0 + span));

    // one-sided slope of r along d at s, taken from the lowest-index farthest point
    let slope = |s: f64| {
        let x = at(s);
        let (_, i) = sets::outer_radius_argmax(norm, pts, &x);
        vecops::dot(&norm.subgradient(&vecops::sub(&x, &pts[i])), direction)
    };
    // shrink to the golden-section neighbourhood when it brackets a sign change
    let h = 1e-6 * (hi - lo);
    if slope(s_gs - h) <= 0.0 && slope(s_gs + h) >= 0.0 {
        lo = (s_gs - h).max(lo);
        hi = (s_gs + h).min(hi);
    }
    let mut s = s_gs;
    if slope(lo) < 0.0 && slope(hi) > 0.0 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-14 * (1.0 + mid.abs()) || mid <= lo || mid >= hi {
                break;
            }
            let g = slope(mid);
            if g == 0.0 {
                lo = mid;
                hi = mid;
                break;
            } else if g < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // near a smooth minimum r is flat below rounding, so compare with slack
        let mid = 0.5 * (lo + hi);
        let fs = f(s);
        if f(mid) <= fs + 8.0 * f64::EPSILON * fs.abs() {
            s = mid;
        }
    }
    Ok(LineMinimum { s, radius: f(s), fallback })
}

/// Scans `n` points; returns the bracket around the argmin if the sampled
/// profile decreases then increases (allowing flat stretches).
fn bracket(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Option<(f64, f64)> {
    let xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let k = (0..n).fold(0, |b, i| if ys[i] < ys[b] { i } else { b });
    let slack = 1e-12 * (1.0 + ys[k].abs());
    let unimodal =
        (1..=k).all(|i| ys[i] <= ys[i - 1] + slack) && (k + 1..n).all(|i| ys[i] >= ys[i - 1] - slack);
    unimodal.then(|| (xs[k.saturating_sub(1)], xs[(k + 1).min(n - 1)]))
}

fn dense_bracket(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let n = DENSE_SCAN_POINTS;
    let xs: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    let k = (0..n).fold(0, |best, i| if f(xs[i]) < f(xs[best]) { i } else { best });
    (xs[k.saturating_sub(1)], xs[(k + 1).min(n - 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::NormSpec;

    fn basis3(p: f64) -> PointSet {
        PointSet::new(NormSpec::pnorm(3, p).unwrap(), (0..3).map(|k| vecops::basis(3, k)).collect()).unwrap()
    }

    #[test]
    fn euclidean_basis_triangle() {
        let m = symmetric_line_minimize(&basis3(2.0), &[1.0, 1.0, 1.0], &SolverOptions::default()).unwrap();
        assert!((m.s - 1.0 / 3.0).abs() < 1e-10, "{}", m.s);
        assert!(!m.fallback);
    }

    #[test]
    fn p_one_and_a_half() {
        let m = symmetric_line_minimize(&basis3(1.5), &[1.0, 1.0, 1.0], &SolverOptions::default()).unwrap();
        assert!((m.s - 0.2).abs() < 1e-10, "{}", m.s);
    }

    #[test]
    fn symmetric_pair() {
        let set = PointSet::new(NormSpec::euclidean(2), vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).unwrap();
        let m = symmetric_line_minimize(&set, &[1.0, 0.0], &SolverOptions::default()).unwrap();
        assert!(m.s.abs() < 1e-10 && (m.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_direction_rejected() {
        assert_eq!(
            symmetric_line_minimize(&basis3(2.0), &[0.0; 3], &SolverOptions::default()).unwrap_err(),
            Error::ZeroVector
        );
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, fx) = golden_section_minimize(|x| (x - 0.3) * (x - 0.3) + 1.0, -2.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-7 && (fx - 1.0).abs() < 1e-13);
    }
}
