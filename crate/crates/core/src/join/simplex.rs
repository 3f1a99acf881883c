//! The 2-simplex maps `α̃`, `β̃`, the reparametrization `(s', t')` and the
//! homotopy `θ̃` between `α̃` and `β̃`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on simplex coordinates and face membership.
pub const SIMPLEX_EPS: f64 = 1e-9;
/// Radius around `(s, t) = (0, 0)` where `θ̃` is not evaluated.
pub const ORIGIN_EXCLUSION: f64 = 1e-6;

/// A point `(t_0, t_1, t_2)` of the standard 2-simplex in `R^3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint(pub [f64; 3]);

impl SimplexPoint {
    pub fn new(t: [f64; 3]) -> Result<Self> {
        let ok = t.iter().all(|&x| (-SIMPLEX_EPS..=1.0 + SIMPLEX_EPS).contains(&x))
            && (t.iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_EPS;
        if !ok {
            return Err(Error::Domain(format!("{t:?} is not a point of the 2-simplex")));
        }
        Ok(SimplexPoint(t))
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    /// Membership in the face `∂_i Δ²`, where `t_i = 0`.
    pub fn on_face(&self, i: usize) -> bool {
        self.0[i].abs() <= SIMPLEX_EPS
    }

    /// Largest coordinate difference.
    pub fn distance(&self, other: &SimplexPoint) -> f64 {
        max_diff(&self.0, &other.0)
    }
}

pub(crate) fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs()))
}

fn unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {x} is outside [0, 1]")))
    }
}

fn unit_square(s: f64, t: f64) -> Result<()> {
    unit("s", s)?;
    unit("t", t)
}

pub(crate) fn s_prime_raw(s: f64, t: f64) -> f64 {
    s + t - s * t
}

pub(crate) fn t_prime_raw(s: f64, t: f64) -> f64 {
    if s == 0.0 && t == 0.0 {
        0.0
    } else {
        t / (s + t - s * t)
    }
}

pub(crate) fn alpha_tilde_raw(s: f64, t: f64) -> [f64; 3] {
    [s * t, s * (1.0 - t), 1.0 - s]
}

pub(crate) fn beta_tilde_raw(s: f64, t: f64) -> [f64; 3] {
    [t, s * (1.0 - t), (1.0 - s) * (1.0 - t)]
}

/// `s'(s, t) = s + t - st`.
pub fn s_prime(s: f64, t: f64) -> Result<f64> {
    unit_square(s, t)?;
    Ok(s_prime_raw(s, t))
}

/// `t'(s, t) = t / (s + t - st)`, and `0` at the origin, where it is discontinuous.
pub fn t_prime(s: f64, t: f64) -> Result<f64> {
    unit_square(s, t)?;
    Ok(t_prime_raw(s, t))
}

/// `α̃(s, t) = (st, s(1-t), 1-s)`.
pub fn alpha_tilde(s: f64, t: f64) -> Result<SimplexPoint> {
    unit_square(s, t)?;
    SimplexPoint::new(alpha_tilde_raw(s, t))
}

/// `β̃(s, t) = (t, s(1-t), (1-s)(1-t))`.
pub fn beta_tilde(s: f64, t: f64) -> Result<SimplexPoint> {
    unit_square(s, t)?;
    SimplexPoint::new(beta_tilde_raw(s, t))
}

fn theta_domain(p: f64, s: f64, t: f64) -> Result<()> {
    unit("p", p)?;
    unit_square(s, t)?;
    if s.hypot(t) < ORIGIN_EXCLUSION {
        return Err(Error::Domain(format!("(s, t) = ({s}, {t}) is too close to the origin")));
    }
    Ok(())
}

/// First half of `θ̃`: `H(p, s, t) = (sT, s(1-T), 1-s)` with `T = p t' + (1-p) t`.
pub fn theta_h(p: f64, s: f64, t: f64) -> Result<SimplexPoint> {
    theta_domain(p, s, t)?;
    let big_t = p * t_prime_raw(s, t) + (1.0 - p) * t;
    SimplexPoint::new([s * big_t, s * (1.0 - big_t), 1.0 - s])
}

/// Second half of `θ̃`: `K(p, s, t) = (S t', S(1-t'), 1-S)` with `S = p s' + (1-p) s`.
pub fn theta_k(p: f64, s: f64, t: f64) -> Result<SimplexPoint> {
    theta_domain(p, s, t)?;
    let tp = t_prime_raw(s, t);
    let big_s = p * s_prime_raw(s, t) + (1.0 - p) * s;
    SimplexPoint::new([big_s * tp, big_s * (1.0 - tp), 1.0 - big_s])
}

/// The concatenated homotopy: `H(2p, ·)` for `p <= 1/2`, then `K(2p - 1, ·)`.
pub fn theta_tilde(p: f64, s: f64, t: f64) -> Result<SimplexPoint> {
    theta_domain(p, s, t)?;
    if p <= 0.5 {
        theta_h(2.0 * p, s, t)
    } else {
        theta_k(2.0 * p - 1.0, s, t)
    }
}
