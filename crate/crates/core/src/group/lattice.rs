use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use super::bitset::Bitset;
use super::perm::{FiniteGroup, PermGroup};
use super::subgroup::{close, Subgroup};
use crate::error::{Error, Result};

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupConjClass {
    /// Canonically smallest member.
    pub representative: Subgroup,
    /// All members, in canonical order.
    pub conjugates: Vec<Subgroup>,
    pub class_order: usize,
}

impl SubgroupConjClass {
    pub fn size(&self) -> usize {
        self.conjugates.len()
    }
}

/// Every subgroup of `G` exactly once, sorted by (order, canonical bitset).
///
/// Built bottom-up: start from the cyclic subgroups and keep joining known
/// subgroups with cyclic ones until nothing new appears. Every subgroup is
/// generated by its cyclic subgroups, so the fixpoint is the whole lattice.
pub fn all_subgroups(group: &Arc<PermGroup>) -> Vec<Subgroup> {
    let n = group.order();
    let mut cyclic: Vec<(Bitset, usize)> = Vec::new();
    let mut seen_cyclic: HashMap<Bitset, ()> = HashMap::new();
    for x in 0..n {
        let c = close(group.as_ref(), vec![0], &[x]);
        if seen_cyclic.insert(c.clone(), ()).is_none() {
            cyclic.push((c, x));
        }
    }

    let mut known: HashMap<Bitset, Vec<usize>> = HashMap::new();
    let mut queue: VecDeque<Bitset> = VecDeque::new();
    for (c, x) in &cyclic {
        let gens = if *x == 0 { vec![] } else { vec![*x] };
        known.insert(c.clone(), gens);
        queue.push_back(c.clone());
    }
    while let Some(h) = queue.pop_front() {
        let h_gens = known[&h].clone();
        for (c, x) in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let mut gens = h_gens.clone();
            gens.push(*x);
            let joined = close(group.as_ref(), h.iter().collect(), &gens);
            if !known.contains_key(&joined) {
                known.insert(joined.clone(), gens);
                queue.push_back(joined);
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = known
        .into_keys()
        .map(|m| Subgroup::from_members_unchecked(group, m))
        .collect();
    subgroups.sort();
    subgroups
}

/// Partitions `subgroups` into conjugacy classes, listed with non-increasing
/// order and ties broken by the canonical representative.
///
/// With this ordering a subgroup conjugate to a proper subgroup of a class
/// representative always lands in a later class.
pub fn conjugacy_classes_of_subgroups(
    group: &Arc<PermGroup>,
    subgroups: &[Subgroup],
) -> Vec<SubgroupConjClass> {
    let index: HashMap<&Bitset, usize> =
        subgroups.iter().enumerate().map(|(i, s)| (s.members(), i)).collect();
    let mut assigned = vec![false; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &g in group.generator_indices() {
                let conj = subgroups[i].conjugate_by(g);
                let j = index[conj.members()];
                if !assigned[j] {
                    assigned[j] = true;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        let conjugates: Vec<Subgroup> = members.iter().map(|&i| subgroups[i].clone()).collect();
        classes.push(SubgroupConjClass {
            representative: conjugates[0].clone(),
            class_order: conjugates[0].order(),
            conjugates,
        });
    }
    classes.sort_by(|a, b| {
        Reverse(a.class_order)
            .cmp(&Reverse(b.class_order))
            .then_with(|| a.representative.members().cmp(b.representative.members()))
    });
    classes
}

/// The full subgroup lattice of a group with lookups used by the rest of the crate.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: Arc<PermGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<Bitset, usize>,
    classes: Vec<SubgroupConjClass>,
    class_of: Vec<usize>,
    minimal_overgroups: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn new(group: Arc<PermGroup>) -> Self {
        let subgroups = all_subgroups(&group);
        let index: HashMap<Bitset, usize> =
            subgroups.iter().enumerate().map(|(i, s)| (s.members().clone(), i)).collect();
        let classes = conjugacy_classes_of_subgroups(&group, &subgroups);
        let mut class_of = vec![0; subgroups.len()];
        for (ci, class) in classes.iter().enumerate() {
            for s in &class.conjugates {
                class_of[index[s.members()]] = ci;
            }
        }
        let minimal_overgroups = (0..subgroups.len())
            .map(|h| {
                let overs: Vec<usize> = (h + 1..subgroups.len())
                    .filter(|&k| {
                        subgroups[k].order() > subgroups[h].order()
                            && subgroups[h].is_subgroup_of(&subgroups[k])
                    })
                    .collect();
                overs
                    .iter()
                    .copied()
                    .filter(|&k| {
                        !overs.iter().any(|&l| {
                            subgroups[l].order() < subgroups[k].order()
                                && subgroups[l].is_subgroup_of(&subgroups[k])
                        })
                    })
                    .collect()
            })
            .collect();
        SubgroupLattice { group, subgroups, index, classes, class_of, minimal_overgroups }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Lattice position of a subgroup of the same group.
    pub fn index_of(&self, h: &Subgroup) -> Result<usize> {
        if !Arc::ptr_eq(h.parent(), &self.group) {
            return Err(Error::ParentMismatch);
        }
        Ok(self.index[h.members()])
    }

    pub fn classes(&self) -> &[SubgroupConjClass] {
        &self.classes
    }

    /// Position of the conjugacy class containing lattice entry `i`.
    pub fn class_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, h: &Subgroup) -> Result<usize> {
        Ok(self.class_of[self.index_of(h)?])
    }

    /// Lattice indices of the minimal proper overgroups of entry `i`.
    pub fn minimal_overgroup_indices(&self, i: usize) -> &[usize] {
        &self.minimal_overgroups[i]
    }

    /// All `K > H` with no subgroup strictly between them.
    pub fn minimal_overgroups(&self, h: &Subgroup) -> Result<Vec<Subgroup>> {
        let i = self.index_of(h)?;
        Ok(self.minimal_overgroups[i].iter().map(|&k| self.subgroups[k].clone()).collect())
    }

    /// Lattice indices of all `K >= H`, including `H` itself.
    pub fn overgroup_indices(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let h = &self.subgroups[i];
        (i..self.subgroups.len()).filter(move |&k| h.is_subgroup_of(&self.subgroups[k]))
    }

    /// Lattice index of the intersection of entries `i` and `j`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.subgroups[i].members().intersection(self.subgroups[j].members())]
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn whole_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Smallest conjugation-closed superset, as lattice indices.
    pub fn conjugation_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &i in set {
            for s in &self.classes[self.class_of[i]].conjugates {
                out.insert(self.index[s.members()]);
            }
        }
        out
    }
}
