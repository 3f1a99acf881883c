//! Stable-range certificates and limit homotopy groups for spaces of
//! equivariant self-maps of linear spheres.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`] enumerates finite permutation groups, their subgroup lattices,
//!   conjugacy classes of subgroups, Weyl groups and abelianizations.
//! * [`rep`] builds real orthogonal representations and computes fixed-point
//!   dimensions and the isotropy sets of their unit spheres.
//! * [`family`] closes isotropy sets into the family that indexes the
//!   splitting, computes isotropy of joins and the orbit-type filtration.
//! * [`stable`] turns "for all sufficiently large n" into explicit,
//!   checkable certificates.
//! * [`limit`] evaluates the limit groups in degrees 0 and 1.
//! * [`join`] implements the coordinate formulas for joins, simplices and
//!   one-point compactifications, with pointwise checks of their identities.
//! * [`config`], [`report`] and [`verify`] drive the whole pipeline.

pub mod config;
pub mod error;
pub mod family;
pub mod group;
pub mod join;
pub mod limit;
pub mod rep;
pub mod report;
pub mod stable;
pub mod verify;

pub use error::{Error, Result};
