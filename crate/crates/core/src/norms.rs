//! Declarative norm families on R^n.
//!
//! A [`NormSpec`] is a closed description (no callbacks) so that every
//! computation built on it can be serialized and replayed exactly. The
//! [`Norm`] trait is the evaluation surface the solver and samplers use; it
//! is also implemented by the weighted discrete `L_p` spaces in
//! [`crate::constructions`].
//!
//! All families here are *absolute* norms: `‖x‖` depends only on `|x_i|`
//! and is non-decreasing in each `|x_i|`. The grid bounds in the solver rely
//! on that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vecops::{self, Vector};

/// Evaluation surface for a norm on R^n.
pub trait Norm {
    fn dim(&self) -> usize;

    /// `‖x‖`. Inputs are assumed to have `dim()` finite coordinates.
    fn norm(&self, x: &[f64]) -> f64;

    /// `‖x − y‖`.
    fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        self.norm(&vecops::sub(x, y))
    }

    /// An element `g` of the dual unit ball with `<g, x> = ‖x‖`.
    ///
    /// Ties are broken towards the lowest coordinate index so repeated runs
    /// pick the same face.
    fn subgradient(&self, x: &[f64]) -> Vector;

    /// A constant `m > 0` with `‖x‖ ≥ m·max_i |x_i|` for every `x`.
    fn linf_lower(&self) -> f64;
}

/// A norm family on R^`dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NormSpecRepr", into = "NormSpecRepr")]
pub struct NormSpec {
    dim: usize,
    family: NormFamily,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormFamily {
    /// `(Σ|x_i|^p)^{1/p}`, `p = ∞` meaning the max norm.
    PNorm(f64),
    /// `Σ w_k ‖x‖_k` over child norms on the same space.
    Sum(Vec<(f64, NormSpec)>),
    /// `max_k |x_k| + sqrt(Σ w_k x_k²)`.
    SupPlusWeightedL2(Vec<f64>),
}

impl NormSpec {
    pub fn new(dim: usize, family: NormFamily) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidNorm("dimension must be positive".into()));
        }
        match &family {
            NormFamily::PNorm(p) => {
                if p.is_nan() || *p < 1.0 {
                    return Err(Error::InvalidExponent(*p));
                }
            }
            NormFamily::Sum(children) => {
                if children.is_empty() {
                    return Err(Error::InvalidNorm("empty sum".into()));
                }
                for (w, child) in children {
                    if !(w.is_finite() && *w > 0.0) {
                        return Err(Error::InvalidWeight);
                    }
                    if child.dim != dim {
                        return Err(Error::DimensionMismatch { expected: dim, got: child.dim });
                    }
                }
            }
            NormFamily::SupPlusWeightedL2(weights) => {
                if weights.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: weights.len() });
                }
                if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
                    return Err(Error::InvalidWeight);
                }
            }
        }
        Ok(Self { dim, family })
    }

    pub fn pnorm(dim: usize, p: f64) -> Result<Self> {
        Self::new(dim, NormFamily::PNorm(p))
    }

    pub fn euclidean(dim: usize) -> Self {
        Self { dim, family: NormFamily::PNorm(2.0) }
    }

    pub fn sum(dim: usize, children: Vec<(f64, NormSpec)>) -> Result<Self> {
        Self::new(dim, NormFamily::Sum(children))
    }

    pub fn sup_plus_weighted_l2(weights: Vec<f64>) -> Result<Self> {
        Self::new(weights.len(), NormFamily::SupPlusWeightedL2(weights))
    }

    pub fn family(&self) -> &NormFamily {
        &self.family
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if !vecops::is_finite(x) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// Checked `‖x‖`.
    pub fn eval_norm(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.norm(x))
    }

    /// Checked `‖x − y‖`.
    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.dist(x, y))
    }

    /// `‖u‖ + ‖v‖ − ‖u + v‖`, the slack in the triangle inequality.
    ///
    /// For strictly convex families it is positive unless `u` is a positive
    /// multiple of `v`.
    pub fn convexity_defect(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        self.check(u)?;
        self.check(v)?;
        let nu = self.norm(u);
        let nv = self.norm(v);
        if nu == 0.0 || nv == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok((nu + nv - self.norm(&vecops::add(u, v))).max(0.0))
    }

    /// Whether the family is strictly convex (unit sphere has no segments).
    pub fn is_strictly_convex_family(&self) -> bool {
        match &self.family {
            NormFamily::PNorm(p) => *p > 1.0 && p.is_finite(),
            // a norm plus a strictly convex norm is strictly convex
            NormFamily::Sum(children) => children.iter().any(|(_, c)| c.is_strictly_convex_family()),
            NormFamily::SupPlusWeightedL2(_) => true,
        }
    }

    fn eval_coords<I>(&self, coords: I) -> f64
    where
        I: Iterator<Item = f64> + Clone,
    {
        match &self.family {
            NormFamily::PNorm(p) => pnorm_coords(*p, coords),
            NormFamily::Sum(children) => {
                children.iter().map(|(w, c)| w * c.eval_coords(coords.clone())).sum()
            }
            NormFamily::SupPlusWeightedL2(weights) => {
                let mut sup = 0.0_f64;
                let mut sq = 0.0;
                for (x, w) in coords.zip(weights) {
                    sup = sup.max(x.abs());
                    sq += w * x * x;
                }
                sup + sq.sqrt()
            }
        }
    }

    fn subgradient_into(&self, x: &[f64], weight: f64, out: &mut [f64]) {
        match &self.family {
            NormFamily::PNorm(p) => pnorm_subgradient_into(*p, x, weight, out),
            NormFamily::Sum(children) => {
                for (w, c) in children {
                    c.subgradient_into(x, weight * w, out);
                }
            }
            NormFamily::SupPlusWeightedL2(weights) => {
                if let Some(j) = argmax_abs(x) {
                    out[j] += weight * sign(x[j]);
                }
                let sq: f64 = x.iter().zip(weights).map(|(v, w)| w * v * v).sum();
                if sq > 0.0 {
                    let s = sq.sqrt();
                    for ((o, v), w) in out.iter_mut().zip(x).zip(weights) {
                        *o += weight * w * v / s;
                    }
                }
            }
        }
    }
}

impl Norm for NormSpec {
    fn dim(&self) -> usize {
        self.dim
    }

    fn norm(&self, x: &[f64]) -> f64 {
        self.eval_coords(x.iter().copied())
    }

    fn dist(&self, x: &[f64], y: &[f64]) -> f64 {
        self.eval_coords(x.iter().zip(y).map(|(a, b)| a - b))
    }

    fn subgradient(&self, x: &[f64]) -> Vector {
        let mut g = vec![0.0; x.len()];
        self.subgradient_into(x, 1.0, &mut g);
        g
    }

    fn linf_lower(&self) -> f64 {
        match &self.family {
            NormFamily::PNorm(_) | NormFamily::SupPlusWeightedL2(_) => 1.0,
            NormFamily::Sum(children) => children.iter().map(|(w, c)| w * c.linf_lower()).sum(),
        }
    }
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Lowest index attaining `max |x_i|`, `None` for the zero vector.
fn argmax_abs(x: &[f64]) -> Option<usize> {
    let mut best = None;
    let mut m = 0.0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > m {
            m = v.abs();
            best = Some(i);
        }
    }
    best
}

pub(crate) fn pnorm_coords<I>(p: f64, coords: I) -> f64
where
    I: Iterator<Item = f64> + Clone,
{
    if p == 1.0 {
        coords.map(f64::abs).sum()
    } else if p == 2.0 {
        coords.map(|v| v * v).sum::<f64>().sqrt()
    } else if p.is_infinite() {
        coords.fold(0.0, |m, v| m.max(v.abs()))
    } else {
        let m = coords.clone().fold(0.0_f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            return 0.0;
        }
        m * coords.map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn pnorm_subgradient_into(p: f64, x: &[f64], weight: f64, out: &mut [f64]) {
    if p == 1.0 {
        for (o, v) in out.iter_mut().zip(x) {
            *o += weight * sign(*v);
        }
        return;
    }
    if p.is_infinite() {
        if let Some(j) = argmax_abs(x) {
            out[j] += weight * sign(x[j]);
        }
        return;
    }
    let n = pnorm_coords(p, x.iter().copied());
    if n == 0.0 {
        return;
    }
    if p == 2.0 {
        for (o, v) in out.iter_mut().zip(x) {
            *o += weight * v / n;
        }
    } else {
        for (o, v) in out.iter_mut().zip(x) {
            *o += weight * sign(*v) * (v.abs() / n).powf(p - 1.0);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NormSpecRepr {
    dim: usize,
    family: FamilyRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
enum FamilyRepr {
    #[serde(rename = "pnorm")]
    PNorm(Exponent),
    #[serde(rename = "sum")]
    Sum(Vec<(f64, NormSpecRepr)>),
    #[serde(rename = "sup_plus_wl2")]
    SupPlusWl2(Vec<f64>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Exponent {
    Finite(f64),
    Named(String),
}

impl TryFrom<NormSpecRepr> for NormSpec {
    type Error = Error;

    fn try_from(repr: NormSpecRepr) -> Result<Self> {
        let family = match repr.family {
            FamilyRepr::PNorm(Exponent::Finite(p)) => NormFamily::PNorm(p),
            FamilyRepr::PNorm(Exponent::Named(s)) => match s.to_ascii_lowercase().as_str() {
                "inf" | "infinity" => NormFamily::PNorm(f64::INFINITY),
                other => {
                    return Err(Error::InvalidNorm(format!("unrecognized exponent {other:?}")))
                }
            },
            FamilyRepr::Sum(children) => NormFamily::Sum(
                children
                    .into_iter()
                    .map(|(w, c)| Ok((w, NormSpec::try_from(c)?)))
                    .collect::<Result<_>>()?,
            ),
            FamilyRepr::SupPlusWl2(w) => NormFamily::SupPlusWeightedL2(w),
        };
        NormSpec::new(repr.dim, family)
    }
}

impl From<NormSpec> for NormSpecRepr {
    fn from(spec: NormSpec) -> Self {
        let family = match spec.family {
            NormFamily::PNorm(p) if p.is_infinite() => FamilyRepr::PNorm(Exponent::Named("inf".into())),
            NormFamily::PNorm(p) => FamilyRepr::PNorm(Exponent::Finite(p)),
            NormFamily::Sum(children) => {
                FamilyRepr::Sum(children.into_iter().map(|(w, c)| (w, c.into())).collect())
            }
            NormFamily::SupPlusWeightedL2(w) => FamilyRepr::SupPlusWl2(w),
        };
        NormSpecRepr { dim: spec.dim, family }
    }
}

impl std::fmt::Display for NormSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.family {
            NormFamily::PNorm(p) if p.is_infinite() => write!(f, "l_inf^{}", self.dim),
            NormFamily::PNorm(p) => write!(f, "l_{p}^{}", self.dim),
            NormFamily::Sum(children) => {
                let parts: Vec<String> = children.iter().map(|(w, c)| format!("{w}*{c}")).collect();
                write!(f, "({})", parts.join(" + "))
            }
            NormFamily::SupPlusWeightedL2(_) => write!(f, "sup+wl2^{}", self.dim),
        }
    }
}
