use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::bitset::Bitset;
use super::perm::{FiniteGroup, PermGroup};
use crate::error::{Error, Result};

/// A subgroup of a [`PermGroup`], stored as a bitset over the parent's element indices.
///
/// Equality and hashing look at the members only; operations combining two
/// subgroups check that they share a parent. Ordering is by order first and
/// then by the canonical bitset order.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<PermGroup>,
    members: Bitset,
    order: usize,
}

impl Subgroup {
    /// The subgroup generated by the given element indices.
    pub fn generated_by(parent: &Arc<PermGroup>, generators: &[usize]) -> Subgroup {
        let members = close(parent.as_ref(), vec![0], generators);
        Subgroup::from_members_unchecked(parent, members)
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> Subgroup {
        Subgroup::from_members_unchecked(parent, Bitset::from_indices(parent.order(), [0]))
    }

    pub fn whole(parent: &Arc<PermGroup>) -> Subgroup {
        Subgroup::from_members_unchecked(parent, Bitset::from_indices(parent.order(), 0..parent.order()))
    }

    /// Wraps a member set after checking closure, the identity and Lagrange.
    pub fn from_members(parent: &Arc<PermGroup>, members: Bitset) -> Result<Subgroup> {
        if members.len() != parent.order() || !members.contains(0) {
            return Err(Error::NumericConsistency("member set lacks the identity".into()));
        }
        let elems: Vec<usize> = members.iter().collect();
        for &a in &elems {
            for &b in &elems {
                if !members.contains(parent.mul(a, b)) {
                    return Err(Error::NumericConsistency(format!(
                        "member set not closed: {a} * {b} escapes"
                    )));
                }
            }
        }
        if !parent.order().is_multiple_of(elems.len()) {
            return Err(Error::NumericConsistency("subgroup order does not divide group order".into()));
        }
        Ok(Subgroup::from_members_unchecked(parent, members))
    }

    pub(crate) fn from_members_unchecked(parent: &Arc<PermGroup>, members: Bitset) -> Subgroup {
        let order = members.count();
        Subgroup { parent: Arc::clone(parent), members, order }
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.parent.order()
    }

    /// `g H g^-1` for the element index `g`.
    pub fn conjugate_by(&self, g: usize) -> Subgroup {
        let members = Bitset::from_indices(
            self.parent.order(),
            self.members.iter().map(|h| self.parent.conjugate(g, h)),
        );
        Subgroup { parent: Arc::clone(&self.parent), members, order: self.order }
    }

    /// A small generating set, chosen greedily in element-index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Bitset::from_indices(self.parent.order(), [0]);
        for x in self.members.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = close(self.parent.as_ref(), span.iter().collect(), &gens);
            }
        }
        gens
    }
}

/// Intersection of two subgroups of the same group.
pub fn intersect(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    if !h.same_parent(k) {
        return Err(Error::ParentMismatch);
    }
    Ok(Subgroup::from_members_unchecked(&h.parent, h.members.intersection(&k.members)))
}

/// `N_G(H) = { g : g H g^-1 = H }`.
pub fn normalizer(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let members = Bitset::from_indices(
        g.order(),
        (0..g.order()).filter(|&x| h.members.iter().all(|m| h.members.contains(g.conjugate(x, m)))),
    );
    Subgroup::from_members_unchecked(g, members)
}

/// Closure of `start` (a set containing the identity, closed under the
/// generators already applied) under right multiplication by `generators`.
pub(crate) fn close<G: FiniteGroup + ?Sized>(group: &G, start: Vec<usize>, generators: &[usize]) -> Bitset {
    let mut members = Bitset::from_indices(group.order(), start.iter().copied());
    let mut list = start;
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &g in generators {
            let y = group.mul(x, g);
            if members.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    members
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order, self.members.iter().collect::<Vec<_>>())
    }
}
