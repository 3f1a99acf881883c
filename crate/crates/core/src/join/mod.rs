//! Executable versions of the join and suspension coordinate formulas.

pub mod maps;
pub mod point;
pub mod simplex;
pub mod suspension;

pub use maps::{alpha, beta, inclusion, join_map, join_map_on_triple, psi_map, ParamMap, SampledMap};
pub use point::{assoc_left, assoc_right, split_left, split_right, JoinEntry, JoinPoint, LeftNested, RightNested};
pub use simplex::{alpha_tilde, beta_tilde, s_prime, t_prime, theta_h, theta_k, theta_tilde, SimplexPoint};
pub use suspension::{eta, h, phi, pinch, sigma, tau, CompactifiedPoint, Norm, Pinched, SelfMap, SuspensionPoint};
