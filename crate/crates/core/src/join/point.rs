//! Points `[t_1 x_1, …, t_n x_n]` of an iterated join and the associativity
//! homeomorphisms `(XY)Z ≅ XYZ ≅ X(YZ)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the weight sum.
pub const WEIGHT_EPS: f64 = 1e-9;
/// Weights at or below this are treated as zero and their points forgotten.
pub const DROP_EPS: f64 = 1e-12;

/// One entry `t_i x_i`; `point` is `None` exactly when the weight is zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JoinEntry {
    pub weight: f64,
    pub point: Option<Vec<f64>>,
}

/// A normalized point of an `n`-fold join. Factor points are vectors in
/// the ambient space of each factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JoinPoint {
    entries: Vec<JoinEntry>,
}

impl JoinPoint {
    /// Builds `[w_1 x_1, …]`; entries with weight `<= DROP_EPS` lose their point.
    pub fn new(entries: Vec<(f64, Option<Vec<f64>>)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::MalformedJoin("a join point needs at least one factor".into()));
        }
        let mut sum = 0.0;
        let mut out = Vec::with_capacity(entries.len());
        for (i, (w, p)) in entries.into_iter().enumerate() {
            if !(-WEIGHT_EPS..=1.0 + WEIGHT_EPS).contains(&w) {
                return Err(Error::MalformedJoin(format!("weight {w} of factor {i} is outside [0, 1]")));
            }
            sum += w;
            if w <= DROP_EPS {
                out.push(JoinEntry { weight: 0.0, point: None });
            } else {
                let p = p.ok_or_else(|| {
                    Error::MalformedJoin(format!("factor {i} has weight {w} but no point"))
                })?;
                out.push(JoinEntry { weight: w, point: Some(p) });
            }
        }
        if (sum - 1.0).abs() > WEIGHT_EPS {
            return Err(Error::MalformedJoin(format!("weights sum to {sum}, not 1")));
        }
        Ok(JoinPoint { entries: out })
    }

    /// `[s x, (1-s) z]`.
    pub fn pair(s: f64, x: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        JoinPoint::new(vec![(s, Some(x)), (1.0 - s, Some(z))])
    }

    /// `[1 x, 0, …, 0]` with the point in slot `slot` of an `arity`-fold join.
    pub fn vertex(arity: usize, slot: usize, x: Vec<f64>) -> Result<Self> {
        let mut entries = vec![(0.0, None); arity];
        entries[slot] = (1.0, Some(x));
        JoinPoint::new(entries)
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[JoinEntry] {
        &self.entries
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.entries[i].weight
    }

    pub fn point(&self, i: usize) -> Option<&[f64]> {
        self.entries[i].point.as_deref()
    }

    /// Distance between representatives: weight differences, point
    /// differences where both are present, and the weight of an entry whose
    /// point is missing on the other side. Infinite for different arities.
    pub fn distance(&self, other: &JoinPoint) -> f64 {
        if self.arity() != other.arity() {
            return f64::INFINITY;
        }
        let mut d: f64 = 0.0;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            d = d.max((a.weight - b.weight).abs());
            match (&a.point, &b.point) {
                (Some(x), Some(y)) if x.len() == y.len() => {
                    d = d.max(x.iter().zip(y).fold(0.0f64, |m, (p, q)| m.max((p - q).abs())));
                }
                (Some(_), Some(_)) => return f64::INFINITY,
                (Some(_), None) => d = d.max(a.weight),
                (None, Some(_)) => d = d.max(b.weight),
                (None, None) => {}
            }
        }
        d
    }

    pub fn approx_eq(&self, other: &JoinPoint, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// The point without factor `i`, which must have weight zero.
    pub fn drop_factor(&self, i: usize) -> Result<JoinPoint> {
        if self.entries[i].weight > 0.0 {
            return Err(Error::MalformedJoin(format!(
                "factor {i} has weight {} and cannot be dropped",
                self.entries[i].weight
            )));
        }
        let mut entries = self.entries.clone();
        entries.remove(i);
        Ok(JoinPoint { entries })
    }

    /// A continuous embedding in Euclidean space: `(t_1 x_1, …, t_n x_n, t_1, …, t_n)`,
    /// with `dims[i]` the ambient dimension of factor `i`.
    pub fn embed(&self, dims: &[usize]) -> Result<Vec<f64>> {
        if dims.len() != self.arity() {
            return Err(Error::MalformedJoin(format!("{} dimensions for {} factors", dims.len(), self.arity())));
        }
        let mut out = Vec::new();
        for (e, &d) in self.entries.iter().zip(dims) {
            match &e.point {
                Some(p) if p.len() == d => out.extend(p.iter().map(|x| e.weight * x)),
                Some(p) => {
                    return Err(Error::MalformedJoin(format!("point of length {} in a factor of dimension {d}", p.len())))
                }
                None => out.extend(std::iter::repeat_n(0.0, d)),
            }
        }
        out.extend(self.entries.iter().map(|e| e.weight));
        Ok(out)
    }
}

/// `[s[t x, (1-t) y], (1-s) z]` as a point of `(XY)Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftNested {
    pub s: f64,
    pub xy: Option<JoinPoint>,
    pub z: Option<Vec<f64>>,
}

/// `[t x, (1-t)[s y, (1-s) z]]` as a point of `X(YZ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RightNested {
    pub t: f64,
    pub x: Option<Vec<f64>>,
    pub yz: Option<JoinPoint>,
}

fn outer(weight: f64, inner: Option<JoinPoint>, what: &str) -> Result<Option<JoinPoint>> {
    if weight <= DROP_EPS {
        return Ok(None);
    }
    match inner {
        Some(p) if p.arity() == 2 => Ok(Some(p)),
        Some(p) => Err(Error::MalformedJoin(format!("{what} must be a two-factor point, got arity {}", p.arity()))),
        None => Err(Error::MalformedJoin(format!("{what} is missing although its weight is {weight}"))),
    }
}

/// `(XY)Z → XYZ`, `[s[tx,(1-t)y],(1-s)z] ↦ [stx, s(1-t)y, (1-s)z]`.
pub fn assoc_left(p: &LeftNested) -> Result<JoinPoint> {
    let s = p.s;
    let xy = outer(s, p.xy.clone(), "the XY coordinate")?;
    let (t, x, y) = match &xy {
        Some(xy) => (xy.weight(0), xy.point(0).map(<[f64]>::to_vec), xy.point(1).map(<[f64]>::to_vec)),
        None => (0.0, None, None),
    };
    JoinPoint::new(vec![(s * t, x), (s * (1.0 - t), y), (1.0 - s, p.z.clone())])
}

/// Inverse of [`assoc_left`].
pub fn split_left(p: &JoinPoint) -> Result<LeftNested> {
    check_arity(p, 3)?;
    let s = p.weight(0) + p.weight(1);
    let xy = if s > DROP_EPS {
        let t = p.weight(0) / s;
        Some(JoinPoint::new(vec![
            (t, p.point(0).map(<[f64]>::to_vec)),
            (1.0 - t, p.point(1).map(<[f64]>::to_vec)),
        ])?)
    } else {
        None
    };
    Ok(LeftNested { s: if xy.is_some() { s } else { 0.0 }, xy, z: p.point(2).map(<[f64]>::to_vec) })
}

/// `X(YZ) → XYZ`, `[tx,(1-t)[sy,(1-s)z]] ↦ [tx, s(1-t)y, (1-s)(1-t)z]`.
pub fn assoc_right(p: &RightNested) -> Result<JoinPoint> {
    let t = p.t;
    let yz = outer(1.0 - t, p.yz.clone(), "the YZ coordinate")?;
    let (s, y, z) = match &yz {
        Some(yz) => (yz.weight(0), yz.point(0).map(<[f64]>::to_vec), yz.point(1).map(<[f64]>::to_vec)),
        None => (0.0, None, None),
    };
    JoinPoint::new(vec![(t, p.x.clone()), (s * (1.0 - t), y), ((1.0 - s) * (1.0 - t), z)])
}

/// Inverse of [`assoc_right`].
pub fn split_right(p: &JoinPoint) -> Result<RightNested> {
    check_arity(p, 3)?;
    let t = p.weight(0);
    let rest = p.weight(1) + p.weight(2);
    let yz = if rest > DROP_EPS {
        let s = p.weight(1) / rest;
        Some(JoinPoint::new(vec![
            (s, p.point(1).map(<[f64]>::to_vec)),
            (1.0 - s, p.point(2).map(<[f64]>::to_vec)),
        ])?)
    } else {
        None
    };
    Ok(RightNested { t, x: p.point(0).map(<[f64]>::to_vec), yz })
}

fn check_arity(p: &JoinPoint, n: usize) -> Result<()> {
    if p.arity() != n {
        return Err(Error::MalformedJoin(format!("expected a {n}-factor point, got {}", p.arity())));
    }
    Ok(())
}

impl LeftNested {
    /// Distance after mapping both points into `XYZ`.
    pub fn distance(&self, other: &LeftNested) -> Result<f64> {
        Ok(assoc_left(self)?.distance(&assoc_left(other)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_forget_points() {
        let a = JoinPoint::new(vec![(1.0, Some(vec![1.0])), (0.0, Some(vec![5.0]))]).unwrap();
        let b = JoinPoint::new(vec![(1.0, Some(vec![1.0])), (0.0, Some(vec![-3.0]))]).unwrap();
        let c = JoinPoint::new(vec![(1.0 - 1e-13, Some(vec![1.0])), (1e-13, Some(vec![9.0]))]).unwrap();
        assert_eq!(a, b);
        assert!(a.approx_eq(&c, 1e-12));
        assert!(c.point(1).is_none());
        let d = JoinPoint::new(vec![(0.5, Some(vec![1.0])), (0.5, Some(vec![9.0]))]).unwrap();
        assert!(!a.approx_eq(&d, 1e-3));
    }

    #[test]
    fn malformed_points_are_rejected() {
        assert!(JoinPoint::new(vec![]).is_err());
        assert!(JoinPoint::new(vec![(0.5, Some(vec![0.0])), (0.4, Some(vec![0.0]))]).is_err());
        assert!(JoinPoint::new(vec![(0.5, None), (0.5, Some(vec![0.0]))]).is_err());
        assert!(JoinPoint::new(vec![(1.5, Some(vec![0.0])), (-0.5, None)]).is_err());
        let p = JoinPoint::pair(0.5, vec![1.0], vec![2.0]).unwrap();
        assert!(p.drop_factor(0).is_err());
        assert!(split_left(&p).is_err());
    }

    #[test]
    fn associativity_round_trip() {
        let xy = JoinPoint::pair(0.25, vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let left = LeftNested { s: 0.6, xy: Some(xy), z: Some(vec![3.0]) };
        let flat = assoc_left(&left).unwrap();
        assert!((flat.weight(0) - 0.15).abs() < 1e-15);
        assert!((flat.weight(1) - 0.45).abs() < 1e-15);
        assert!(left.distance(&split_left(&flat).unwrap()).unwrap() < 1e-15);

        let right = split_right(&flat).unwrap();
        assert!(assoc_right(&right).unwrap().distance(&flat) < 1e-15);

        let corner = JoinPoint::vertex(3, 2, vec![3.0]).unwrap();
        let nested = split_left(&corner).unwrap();
        assert!(nested.xy.is_none());
        assert_eq!(assoc_left(&nested).unwrap(), corner);
    }

    #[test]
    fn embedding_ignores_forgotten_points() {
        let p = JoinPoint::new(vec![(1.0, Some(vec![2.0, 3.0])), (0.0, None)]).unwrap();
        assert_eq!(p.embed(&[2, 1]).unwrap(), vec![2.0, 3.0, 0.0, 1.0, 0.0]);
        assert!(p.embed(&[2]).is_err());
    }
}
