//! One-point compactifications `S^U`, the suspension coordinate `η`, the
//! pinch map, `τ`, `σ` and the homotopy `h` between `(τf) ∧ S^V` and
//! `τ(f ∧ S^V)`.
//!
//! `φ(x) = x / (1 - x)` identifies `[0, 1]` with `[0, ∞]`. On `U ⊕ V` the
//! norm is `|u + v| = |u| + |v|`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `S^U = U ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompactifiedPoint {
    Finite(Vec<f64>),
    Infinity,
}

impl CompactifiedPoint {
    pub fn zero(dim: usize) -> Self {
        CompactifiedPoint::Finite(vec![0.0; dim])
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, CompactifiedPoint::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CompactifiedPoint::Finite(x) if x.iter().all(|&c| c == 0.0))
    }

    /// `c · x`, with `∞ · x = ∞` for `x ≠ 0`.
    fn scaled(c: f64, x: &[f64]) -> Self {
        if c.is_infinite() {
            CompactifiedPoint::Infinity
        } else {
            CompactifiedPoint::Finite(x.iter().map(|v| c * v).collect())
        }
    }

    fn plus(self, v: &[f64]) -> Self {
        match self {
            CompactifiedPoint::Finite(x) => CompactifiedPoint::Finite(x.iter().zip(v).map(|(a, b)| a + b).collect()),
            CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
        }
    }

    /// `|a - b| / max(1, |a|, |b|)`; `0` when both are `∞`, infinite when only one is.
    pub fn relative_deviation(&self, other: &CompactifiedPoint) -> f64 {
        match (self, other) {
            (CompactifiedPoint::Infinity, CompactifiedPoint::Infinity) => 0.0,
            (CompactifiedPoint::Finite(a), CompactifiedPoint::Finite(b)) if a.len() == b.len() => {
                let diff = euclidean(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>());
                diff / 1f64.max(euclidean(a)).max(euclidean(b))
            }
            _ => f64::INFINITY,
        }
    }
}

pub fn euclidean(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// How `|·|` is computed on the ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Euclidean,
    /// `|u + v| = |u| + |v|` with `u` the first `split` coordinates.
    Sum { split: usize },
}

impl Norm {
    pub fn of(self, x: &[f64]) -> f64 {
        match self {
            Norm::Euclidean => euclidean(x),
            Norm::Sum { split } => euclidean(&x[..split]) + euclidean(&x[split..]),
        }
    }
}

/// `φ(x) = x / (1 - x)` on `[0, 1]`, `φ(1) = ∞`.
pub fn phi(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("φ is defined on [0, 1], got {x}")));
    }
    Ok(if x == 1.0 { f64::INFINITY } else { x / (1.0 - x) })
}

fn phi_unchecked(x: f64) -> f64 {
    if x >= 1.0 {
        f64::INFINITY
    } else {
        x / (1.0 - x)
    }
}

/// Suspension coordinate `[t, x]` of `ΣX`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuspensionPoint {
    pub t: f64,
    pub x: Vec<f64>,
}

/// `η_X(x)(t) = (t, x)`: the path from `α_0` to `α_1` through `x`.
pub fn eta(x: &[f64], t: f64) -> Result<SuspensionPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} is outside [0, 1]")));
    }
    Ok(SuspensionPoint { t, x: x.to_vec() })
}

impl SuspensionPoint {
    /// Image under `ΣS(U) ≅ S^U`, `[t, x] ↦ φ(t) x`; `α_0 = 0` and `α_1 = ∞`.
    pub fn to_sphere(&self) -> CompactifiedPoint {
        if self.t == 0.0 {
            CompactifiedPoint::zero(self.x.len())
        } else {
            CompactifiedPoint::scaled(phi_unchecked(self.t), &self.x)
        }
    }
}

/// Which copy of `S^U` in `S^U ∨ S^U` a point lands in.
#[derive(Clone, Debug, PartialEq)]
pub enum Pinched {
    First(CompactifiedPoint),
    Second(CompactifiedPoint),
}

/// `u ↦ φ(|u|) u` into the first copy for `|u| <= 1`, `u ↦ (1 - 1/|u|) u`
/// into the second for `|u| >= 1`; the first copy's `∞` is glued to the
/// second copy's `0`.
pub fn pinch(u: &CompactifiedPoint, norm: Norm) -> Pinched {
    match u {
        CompactifiedPoint::Infinity => Pinched::Second(CompactifiedPoint::Infinity),
        CompactifiedPoint::Finite(x) => {
            let r = norm.of(x);
            if r <= 1.0 {
                Pinched::First(CompactifiedPoint::scaled(phi_unchecked(r), x))
            } else {
                Pinched::Second(CompactifiedPoint::scaled(1.0 - 1.0 / r, x))
            }
        }
    }
}

type SelfMapFn = Arc<dyn Fn(&CompactifiedPoint) -> CompactifiedPoint + Send + Sync>;

/// A self-map of `S^U`.
#[derive(Clone)]
pub struct SelfMap {
    name: String,
    dim: usize,
    f: SelfMapFn,
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SelfMap({} on S^{})", self.name, self.dim)
    }
}

impl SelfMap {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        f: impl Fn(&CompactifiedPoint) -> CompactifiedPoint + Send + Sync + 'static,
    ) -> Self {
        SelfMap { name: name.into(), dim, f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, u: &CompactifiedPoint) -> CompactifiedPoint {
        (self.f)(u)
    }

    pub fn identity(dim: usize) -> Self {
        SelfMap::new("id", dim, |u| u.clone())
    }

    /// `inv(u) = u / |u|²`, the map `[t, x] ↦ [1 - t, x]` under `φ`; swaps `0` and `∞`.
    pub fn inv(dim: usize) -> Self {
        SelfMap::new("inv", dim, |u| match u {
            CompactifiedPoint::Infinity => CompactifiedPoint::zero(dim_of(u, 0)),
            CompactifiedPoint::Finite(x) => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                if r2 == 0.0 {
                    CompactifiedPoint::Infinity
                } else {
                    CompactifiedPoint::Finite(x.iter().map(|v| v / r2).collect())
                }
            }
        })
        .with_dim(dim)
    }

    fn with_dim(self, dim: usize) -> Self {
        let inner = self.f.clone();
        SelfMap::new(self.name, dim, move |u| match u {
            CompactifiedPoint::Infinity if dim > 0 => {
                let out = inner(u);
                if out.is_zero() || matches!(&out, CompactifiedPoint::Finite(x) if x.is_empty()) {
                    CompactifiedPoint::zero(dim)
                } else {
                    out
                }
            }
            _ => inner(u),
        })
    }

    /// A linear map `u ↦ M u`, extended by `∞ ↦ ∞`.
    pub fn linear(name: impl Into<String>, dim: usize, m: nalgebra::DMatrix<f64>) -> Self {
        SelfMap::new(name, dim, move |u| match u {
            CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
            CompactifiedPoint::Finite(x) => {
                CompactifiedPoint::Finite((&m * nalgebra::DVector::from_column_slice(x)).as_slice().to_vec())
            }
        })
    }

    /// The wedge sum `f + g` along [`pinch`].
    pub fn plus(&self, g: &SelfMap, norm: Norm) -> SelfMap {
        let (f, g) = (self.clone(), g.clone());
        SelfMap::new(format!("{} + {}", f.name, g.name), f.dim, move |u| match pinch(u, norm) {
            Pinched::First(p) => f.apply(&p),
            Pinched::Second(p) => g.apply(&p),
        })
    }

    /// `f ∧ S^V` on `S^{U ⊕ V}`: `u + v ↦ f(u) + v`.
    pub fn smash(&self, v_dim: usize) -> SelfMap {
        let f = self.clone();
        let du = self.dim;
        SelfMap::new(format!("{} ∧ S^V", f.name), du + v_dim, move |w| match w {
            CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
            CompactifiedPoint::Finite(x) => match f.apply(&CompactifiedPoint::Finite(x[..du].to_vec())) {
                CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
                CompactifiedPoint::Finite(mut y) => {
                    y.extend_from_slice(&x[du..]);
                    CompactifiedPoint::Finite(y)
                }
            },
        })
    }
}

fn dim_of(u: &CompactifiedPoint, default: usize) -> usize {
    match u {
        CompactifiedPoint::Finite(x) => x.len(),
        CompactifiedPoint::Infinity => default,
    }
}

/// `τ(f) = id + f`, for `f` with `f(0) = f(∞) = ∞`.
pub fn tau(f: &SelfMap, norm: Norm) -> SelfMap {
    SelfMap::identity(f.dim()).plus(f, norm)
}

/// `σ(f) = inv + f`, for `f` fixing `0` and `∞`.
pub fn sigma(f: &SelfMap, norm: Norm) -> SelfMap {
    SelfMap::inv(f.dim()).plus(f, norm)
}

/// The homotopy `h(t, f, u + v)` on `S^{U ⊕ V}`, `u` the first `f.dim()` coordinates:
///
/// `φ(|u+tv|)(u+tv) + (1-t)v` if `|u+tv| <= 1`,
/// `f((1 - 1/|u+tv|)u) + (1 - t/|u+tv|)v` if `|u+tv| >= 1`, and `∞` at `∞`.
pub fn h(t: f64, f: &SelfMap, w: &CompactifiedPoint) -> Result<CompactifiedPoint> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} is outside [0, 1]")));
    }
    let x = match w {
        CompactifiedPoint::Infinity if t == 0.0 => {
            return Err(Error::Domain("h is not evaluated at (t, u+v) = (0, ∞)".into()))
        }
        CompactifiedPoint::Infinity => return Ok(CompactifiedPoint::Infinity),
        CompactifiedPoint::Finite(x) => x,
    };
    let du = f.dim();
    if x.len() < du {
        return Err(Error::Domain(format!("point of length {} has no U-part of dimension {du}", x.len())));
    }
    let (u, v) = x.split_at(du);
    let r = euclidean(u) + t * euclidean(v);
    if r <= 1.0 {
        let utv: Vec<f64> = u.iter().copied().chain(v.iter().map(|c| t * c)).collect();
        let tail: Vec<f64> = std::iter::repeat_n(0.0, du).chain(v.iter().map(|c| (1.0 - t) * c)).collect();
        Ok(CompactifiedPoint::scaled(phi_unchecked(r), &utv).plus(&tail))
    } else {
        let fu = f.apply(&CompactifiedPoint::Finite(u.iter().map(|c| (1.0 - 1.0 / r) * c).collect()));
        Ok(match fu {
            CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
            CompactifiedPoint::Finite(mut y) => {
                y.extend(v.iter().map(|c| (1.0 - t / r) * c));
                CompactifiedPoint::Finite(y)
            }
        })
    }
}

/// Self-maps of `S^U` sending both `0` and `∞` to `∞`, used to exercise `h`.
pub fn test_maps(dim: usize) -> Vec<SelfMap> {
    let shift = move |x: &[f64]| -> Vec<f64> { (0..dim).map(|i| x[(i + 1) % dim]).collect() };
    let radial = SelfMap::new("radial r + 1/r", dim, move |u| match u {
        CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
        CompactifiedPoint::Finite(x) => {
            let r = euclidean(x);
            if r == 0.0 {
                CompactifiedPoint::Infinity
            } else {
                let scale = (r + 1.0 / r) / r;
                CompactifiedPoint::Finite(shift(x).iter().map(|c| scale * c).collect())
            }
        }
    });
    let rotation = nalgebra::DMatrix::from_fn(dim, dim, |i, j| if (j + 1) % dim == i { 1.0 } else { 0.0 });
    let lin = SelfMap::linear("coordinate shift", dim, rotation);
    let stretch = SelfMap::new("u |u|", dim, |u| match u {
        CompactifiedPoint::Infinity => CompactifiedPoint::Infinity,
        CompactifiedPoint::Finite(x) => {
            let r = euclidean(x);
            CompactifiedPoint::Finite(x.iter().map(|c| r * c).collect())
        }
    });
    vec![radial, sigma(&lin, Norm::Euclidean), sigma(&stretch, Norm::Euclidean)]
}
