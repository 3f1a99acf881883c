//! `J_Z`, `ψ`, `α` and `β` on explicit join coordinates, together with
//! evaluable test maps.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::point::{split_left, JoinPoint};
use super::simplex::{alpha_tilde_raw, beta_tilde_raw};
use crate::error::{Error, Result};

type PointFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
type ParamFn = Arc<dyn Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync>;

/// A continuous map `R^domain_dim ⊇ X → Y ⊆ R^target_dim` given by a closed formula.
#[derive(Clone)]
pub struct SampledMap {
    name: String,
    domain_dim: usize,
    target_dim: usize,
    f: PointFn,
}

impl fmt::Debug for SampledMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SampledMap({}: R^{} -> R^{})", self.name, self.domain_dim, self.target_dim)
    }
}

impl SampledMap {
    pub fn new(
        name: impl Into<String>,
        domain_dim: usize,
        target_dim: usize,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        SampledMap { name: name.into(), domain_dim, target_dim, f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.domain_dim {
            return Err(Error::MalformedJoin(format!(
                "{} expects a point of R^{}, got length {}",
                self.name,
                self.domain_dim,
                x.len()
            )));
        }
        Ok((self.f)(x))
    }

    pub fn identity(dim: usize) -> Self {
        SampledMap::new("identity", dim, dim, |x| x.to_vec())
    }

    /// `x ↦ M x` for a fixed matrix.
    pub fn linear(name: impl Into<String>, m: DMatrix<f64>) -> Self {
        let (rows, cols) = m.shape();
        SampledMap::new(name, cols, rows, move |x| (&m * DVector::from_column_slice(x)).as_slice().to_vec())
    }

    /// `x ↦ x / (1 + |x|)` followed by padding or truncation to `target_dim`.
    pub fn rescaling(domain_dim: usize, target_dim: usize) -> Self {
        SampledMap::new("norm rescaling", domain_dim, target_dim, move |x| {
            let scale = 1.0 / (1.0 + x.iter().map(|v| v * v).sum::<f64>().sqrt());
            (0..target_dim).map(|i| x.get(i).map_or(0.0, |v| v * scale)).collect()
        })
    }

    /// `x ↦ (x_{σ(0)}, …)` with `σ` a cyclic shift, wrapped onto `target_dim` coordinates.
    pub fn coordinate_shift(domain_dim: usize, target_dim: usize) -> Self {
        SampledMap::new("coordinate shift", domain_dim, target_dim, move |x| {
            (0..target_dim).map(|i| x[(i + 1) % domain_dim]).collect()
        })
    }

    /// The fixed library of test maps used by the diagram checks: a linear
    /// map with a deterministic dense matrix, a norm rescaling and a
    /// coordinate shift.
    pub fn library(domain_dim: usize, target_dim: usize) -> Vec<SampledMap> {
        let m = DMatrix::from_fn(target_dim, domain_dim, |i, j| {
            let k = (i * domain_dim + j) as f64;
            (0.7 * k + 0.3).sin() + if i == j { 1.0 } else { 0.0 }
        });
        vec![
            SampledMap::linear("dense linear", m),
            SampledMap::rescaling(domain_dim, target_dim),
            SampledMap::coordinate_shift(domain_dim, target_dim),
        ]
    }
}

/// A map `A × X → Y` given by a closed formula.
#[derive(Clone)]
pub struct ParamMap {
    name: String,
    param_dim: usize,
    domain_dim: usize,
    target_dim: usize,
    f: ParamFn,
}

impl fmt::Debug for ParamMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamMap({}: R^{} x R^{} -> R^{})", self.name, self.param_dim, self.domain_dim, self.target_dim)
    }
}

impl ParamMap {
    pub fn new(
        name: impl Into<String>,
        param_dim: usize,
        domain_dim: usize,
        target_dim: usize,
        f: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        ParamMap { name: name.into(), param_dim, domain_dim, target_dim, f: Arc::new(f) }
    }

    pub fn eval(&self, a: &[f64], x: &[f64]) -> Result<Vec<f64>> {
        if a.len() != self.param_dim || x.len() != self.domain_dim {
            return Err(Error::MalformedJoin(format!(
                "{} expects R^{} x R^{}, got lengths {} and {}",
                self.name,
                self.param_dim,
                self.domain_dim,
                a.len(),
                x.len()
            )));
        }
        Ok((self.f)(a, x))
    }

    /// `(a, x) ↦ f(x)`, the pullback along the projection to `X`.
    pub fn ignoring_param(f: &SampledMap, param_dim: usize) -> Self {
        let g = f.clone();
        ParamMap::new(format!("{} after projection", f.name), param_dim, f.domain_dim, f.target_dim, move |_, x| {
            (g.f)(x)
        })
    }

    /// `(a, x) ↦ h(a)`, the pullback along the projection to `A`.
    pub fn ignoring_point(h: &SampledMap, domain_dim: usize) -> Self {
        let g = h.clone();
        ParamMap::new(format!("{} after projection", h.name), h.domain_dim, domain_dim, h.target_dim, move |a, _| {
            (g.f)(a)
        })
    }
}

fn require_pair(p: &JoinPoint) -> Result<()> {
    if p.arity() != 2 {
        return Err(Error::MalformedJoin(format!("expected a point [sx, (1-s)z], got arity {}", p.arity())));
    }
    Ok(())
}

/// `J_Z(f)([s x, (1-s) z]) = [s f(x), (1-s) z]`.
pub fn join_map(f: &SampledMap, p: &JoinPoint) -> Result<JoinPoint> {
    require_pair(p)?;
    let s = p.weight(0);
    let fx = p.point(0).map(|x| f.eval(x)).transpose()?;
    JoinPoint::new(vec![(s, fx), (1.0 - s, p.point(1).map(<[f64]>::to_vec))])
}

/// `J_Z(f)` for `f: AY → T`, evaluated on a point of `AYZ ≅ (AY)Z`.
///
/// The `AY` coordinate is handed to `f` through [`JoinPoint::embed`] with
/// factor dimensions `ay_dims`.
pub fn join_map_on_triple(f: &SampledMap, p: &JoinPoint, ay_dims: [usize; 2]) -> Result<JoinPoint> {
    let nested = split_left(p)?;
    let fx = match &nested.xy {
        Some(ay) => Some(f.eval(&ay.embed(&ay_dims)?)?),
        None => None,
    };
    JoinPoint::new(vec![(nested.s, fx), (1.0 - nested.s, nested.z)])
}

/// `ψ(f)(a, [s x, (1-s) z]) = [s f(a, x), (1-s) z]`.
pub fn psi_map(f: &ParamMap, a: &[f64], p: &JoinPoint) -> Result<JoinPoint> {
    require_pair(p)?;
    let s = p.weight(0);
    let fx = p.point(0).map(|x| f.eval(a, x)).transpose()?;
    JoinPoint::new(vec![(s, fx), (1.0 - s, p.point(1).map(<[f64]>::to_vec))])
}

/// `incl(x) = [1 x, 0 z]`.
pub fn inclusion(x: Vec<f64>) -> Result<JoinPoint> {
    JoinPoint::vertex(2, 0, x)
}

fn simplex_to_join(w: [f64; 3], a: &[f64], yz: &JoinPoint) -> Result<JoinPoint> {
    JoinPoint::new(vec![
        (w[0], Some(a.to_vec())),
        (w[1], yz.point(0).map(<[f64]>::to_vec)),
        (w[2], yz.point(1).map(<[f64]>::to_vec)),
    ])
}

/// `α(a, [s y, (1-s) z], t) = [st a, s(1-t) y, (1-s) z]`.
pub fn alpha(a: &[f64], yz: &JoinPoint, t: f64) -> Result<JoinPoint> {
    alpha_with(alpha_tilde_raw, a, yz, t)
}

/// [`alpha`] with the simplex map supplied by the caller.
pub(crate) fn alpha_with(
    alpha_tilde: fn(f64, f64) -> [f64; 3],
    a: &[f64],
    yz: &JoinPoint,
    t: f64,
) -> Result<JoinPoint> {
    require_pair(yz)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} is outside [0, 1]")));
    }
    simplex_to_join(alpha_tilde(yz.weight(0), t), a, yz)
}

/// `β(a, [s y, (1-s) z], t) = [t a, s(1-t) y, (1-s)(1-t) z]`.
pub fn beta(a: &[f64], yz: &JoinPoint, t: f64) -> Result<JoinPoint> {
    require_pair(yz)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} is outside [0, 1]")));
    }
    simplex_to_join(beta_tilde_raw(yz.weight(0), t), a, yz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::join::point::{assoc_right, RightNested};

    fn yz(s: f64) -> JoinPoint {
        JoinPoint::pair(s, vec![0.0, 1.0], vec![1.0]).unwrap()
    }

    #[test]
    fn join_map_of_identity_is_identity() {
        let p = JoinPoint::pair(0.3, vec![0.6, 0.8], vec![1.0]).unwrap();
        assert_eq!(join_map(&SampledMap::identity(2), &p).unwrap(), p);
        let f = SampledMap::rescaling(2, 3);
        let x = vec![3.0, 4.0];
        let fx = f.eval(&x).unwrap();
        assert_eq!(join_map(&f, &JoinPoint::pair(1.0, x, vec![0.0]).unwrap()).unwrap(), inclusion(fx).unwrap());
    }

    #[test]
    fn alpha_restrictions() {
        let a = [1.0, 0.0];
        let p = yz(0.4);
        let at0 = alpha(&a, &p, 0.0).unwrap();
        assert!(at0.drop_factor(0).unwrap().approx_eq(&p, 1e-15));
        let at1 = alpha(&a, &p, 1.0).unwrap().drop_factor(1).unwrap();
        assert!(at1.approx_eq(&JoinPoint::pair(0.4, a.to_vec(), vec![1.0]).unwrap(), 1e-15));
        let b1 = beta(&a, &p, 1.0).unwrap();
        assert_eq!(b1, JoinPoint::vertex(3, 0, a.to_vec()).unwrap());
    }

    #[test]
    fn beta_is_the_associativity_quotient() {
        let a = [0.0, 1.0];
        let p = yz(0.7);
        let t = 0.35;
        let right = RightNested { t, x: Some(a.to_vec()), yz: Some(p.clone()) };
        assert!(beta(&a, &p, t).unwrap().approx_eq(&assoc_right(&right).unwrap(), 1e-15));
    }

    #[test]
    fn psi_over_a_point_is_join_map() {
        let f = SampledMap::library(2, 2).remove(0);
        let psi = ParamMap::ignoring_param(&f, 0);
        let p = yz(0.55);
        assert!(psi_map(&psi, &[], &p).unwrap().approx_eq(&join_map(&f, &p).unwrap(), 1e-15));
    }

    #[test]
    fn dimension_mismatches_are_errors() {
        let f = SampledMap::identity(3);
        assert!(f.eval(&[1.0]).is_err());
        assert!(alpha(&[0.0], &yz(0.5), 1.5).is_err());
        assert!(join_map(&f, &JoinPoint::vertex(3, 0, vec![0.0; 3]).unwrap()).is_err());
    }
}
