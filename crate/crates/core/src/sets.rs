//! Finite point sets with outer radius, farthest-point and diameter queries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{Norm, NormSpec};
use crate::vecops::{self, Vector};

/// Default absolute tolerance for deciding which points attain the outer radius.
pub const DEFAULT_ACHIEVER_TOL: f64 = 1e-9;

/// A nonempty finite list of points in R^n together with the ambient norm.
/// Duplicates are allowed and order is preserved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointSetRepr")]
pub struct PointSet {
    pub(crate) norm: NormSpec,
    pub(crate) points: Vec<Vector>,
}

#[derive(Deserialize)]
struct PointSetRepr {
    norm: NormSpec,
    points: Vec<Vector>,
}

impl TryFrom<PointSetRepr> for PointSet {
    type Error = Error;

    fn try_from(r: PointSetRepr) -> Result<Self> {
        PointSet::new(r.norm, r.points)
    }
}

/// Result of a farthest-point query `F(x, A)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarthestQuery {
    pub viewpoint: Vector,
    pub radius: f64,
    pub achievers: Vec<usize>,
    pub tolerance: f64,
}

impl PointSet {
    pub fn new(norm: NormSpec, points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in &points {
            check_point(&norm, p)?;
        }
        Ok(Self { norm, points })
    }

    pub fn norm(&self) -> &NormSpec {
        &self.norm
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.norm.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// At least two distinct points.
    pub fn is_nontrivial(&self) -> bool {
        let first = &self.points[0];
        self.points.iter().any(|p| p != first)
    }

    /// A copy with `point` appended.
    pub fn with_point(&self, point: Vector) -> Result<Self> {
        check_point(&self.norm, &point)?;
        let mut points = self.points.clone();
        points.push(point);
        Ok(Self { norm: self.norm.clone(), points })
    }

    /// `r(x, A) = max_a ‖x − a‖`.
    pub fn outer_radius(&self, x: &[f64]) -> Result<f64> {
        check_point(&self.norm, x)?;
        Ok(outer_radius(&self.norm, &self.points, x))
    }

    /// All points within `tol` of the outer radius from `x`.
    pub fn farthest_set(&self, x: &[f64], tol: f64) -> Result<FarthestQuery> {
        check_point(&self.norm, x)?;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidTolerance);
        }
        let dists = self.distances_from(x);
        let radius = dists.iter().copied().fold(0.0, f64::max);
        let achievers = dists
            .iter()
            .enumerate()
            .filter(|(_, d)| **d >= radius - tol)
            .map(|(i, _)| i)
            .collect();
        Ok(FarthestQuery { viewpoint: x.to_vec(), radius, achievers, tolerance: tol })
    }

    pub fn distances_from(&self, x: &[f64]) -> Vec<f64> {
        self.points.iter().map(|a| self.norm.dist(x, a)).collect()
    }

    /// Exact pairwise maximum distance; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        diameter(&self.norm, &self.points)
    }

    /// `|radius − diam/2| ≤ tol`, where `radius` is a certified Chebyshev radius.
    pub fn is_centerable(&self, radius: f64, tol: f64) -> Result<bool> {
        if radius < 0.0 {
            return Err(Error::NegativeRadius(radius));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidTolerance);
        }
        Ok((radius - self.diameter() / 2.0).abs() <= tol)
    }

    /// The set shifted by `h`.
    pub fn translate(&self, h: &[f64]) -> Result<Self> {
        check_point(&self.norm, h)?;
        let points = self.points.iter().map(|p| vecops::add(p, h)).collect();
        Ok(Self { norm: self.norm.clone(), points })
    }

    /// Image under `x ↦ (x − y)/s`; distances scale by `1/s`.
    pub fn rescale_about(&self, y: &[f64], s: f64) -> Result<Self> {
        check_point(&self.norm, y)?;
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::Precondition("scale factor must be positive".into()));
        }
        let points = self.points.iter().map(|p| vecops::scale(&vecops::sub(p, y), 1.0 / s)).collect();
        Ok(Self { norm: self.norm.clone(), points })
    }

    /// Distance matrix as CSV: one row per point, one column per viewpoint.
    pub fn distance_csv(&self, viewpoints: &[Vector]) -> Result<String> {
        for v in viewpoints {
            check_point(&self.norm, v)?;
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["index".to_string()];
        header.extend(viewpoints.iter().map(|v| format!("y=({})", join(v, ";"))));
        let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
        w.write_record(&header).map_err(io)?;
        for (i, a) in self.points.iter().enumerate() {
            let mut row = vec![i.to_string()];
            row.extend(viewpoints.iter().map(|v| self.norm.dist(v, a).to_string()));
            w.write_record(&row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn join(v: &[f64], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub(crate) fn check_point<N: Norm>(norm: &N, x: &[f64]) -> Result<()> {
    if x.len() != norm.dim() {
        return Err(Error::DimensionMismatch { expected: norm.dim(), got: x.len() });
    }
    if !vecops::is_finite(x) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// `max_a ‖x − a‖` over a raw point list.
pub fn outer_radius<N: Norm + ?Sized>(norm: &N, points: &[Vector], x: &[f64]) -> f64 {
    points.iter().map(|a| norm.dist(x, a)).fold(0.0, f64::max)
}

/// Outer radius together with the lowest index attaining it.
pub(crate) fn outer_radius_argmax<N: Norm + ?Sized>(norm: &N, points: &[Vector], x: &[f64]) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, a) in points.iter().enumerate() {
        let d = norm.dist(x, a);
        if d > best.0 {
            best = (d, i);
        }
    }
    best
}

pub fn diameter<N: Norm + ?Sized>(norm: &N, points: &[Vector]) -> f64 {
    let mut d = 0.0_f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max(norm.dist(a, b));
        }
    }
    d
}
