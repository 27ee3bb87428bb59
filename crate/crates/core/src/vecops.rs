//! Small dense-vector helpers shared across modules.

/// Coordinates of a point in R^n.
pub type Vector = Vec<f64>;

pub fn sub(x: &[f64], y: &[f64]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn add(x: &[f64], y: &[f64]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn scale(x: &[f64], s: f64) -> Vector {
    x.iter().map(|a| a * s).collect()
}

/// `a * x + b * y`
pub fn lincomb(a: f64, x: &[f64], b: f64, y: &[f64]) -> Vector {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn l2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn linf(x: &[f64]) -> f64 {
    x.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

pub fn is_finite(x: &[f64]) -> bool {
    x.iter().all(|v| v.is_finite())
}

pub fn basis(dim: usize, k: usize) -> Vector {
    let mut e = vec![0.0; dim];
    e[k] = 1.0;
    e
}

pub fn centroid(points: &[Vector]) -> Vector {
    let dim = points.first().map_or(0, |p| p.len());
    let mut c = vec![0.0; dim];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let n = points.len().max(1) as f64;
    c.iter_mut().for_each(|v| *v /= n);
    c
}
