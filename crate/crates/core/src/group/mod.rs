//! Finite permutation groups: enumeration, subgroup lattices, conjugacy
//! classes of subgroups, normalizers, Weyl groups and abelianization.

mod abelian;
mod bitset;
mod lattice;
pub mod named;
mod perm;
mod quotient;
mod subgroup;

pub use abelian::{abelianization, FgAbelianGroup};
pub use bitset::Bitset;
pub use lattice::{all_subgroups, conjugacy_classes_of_subgroups, SubgroupConjClass, SubgroupLattice};
pub use perm::{FiniteGroup, Perm, PermGroup, DEFAULT_ORDER_CAP};
pub use quotient::{weyl_group, QuotientGroup};
pub use subgroup::{intersect, normalizer, Subgroup};

