//! Intersection- and conjugation-closed families of subgroups, isotropy of
//! joins, and the orbit-type filtration recorded through fixed-point
//! dimensions.
//!
//! Subgroup sets are handled as sets of lattice indices.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Subgroup, SubgroupConjClass, SubgroupLattice};
use crate::rep::isotropy_indices;

/// A family of subgroups closed under intersection and conjugation.
#[derive(Clone, Debug)]
pub struct IsotropyFamily {
    lattice: Arc<SubgroupLattice>,
    members: BTreeSet<usize>,
    classes: Vec<usize>,
}

impl IsotropyFamily {
    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    /// Lattice indices of the members.
    pub fn member_indices(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn members(&self) -> BTreeSet<Subgroup> {
        self.members.iter().map(|&i| self.lattice.subgroup(i).clone()).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Lattice class indices of the member classes, with non-increasing order.
    pub fn class_indices(&self) -> &[usize] {
        &self.classes
    }

    pub fn classes(&self) -> Vec<&SubgroupConjClass> {
        self.classes.iter().map(|&c| &self.lattice.classes()[c]).collect()
    }

    /// Whether the members are closed under intersection and conjugation.
    pub fn is_closed(&self) -> bool {
        is_closed(&self.lattice, &self.members)
    }
}

fn is_closed(lattice: &SubgroupLattice, set: &BTreeSet<usize>) -> bool {
    lattice.conjugation_closure(set) == *set
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&lattice.meet(a, b))))
}

/// Smallest family containing every seed set, closed under pairwise
/// intersection and conjugation.
pub fn family_closure(lattice: &Arc<SubgroupLattice>, seeds: &[BTreeSet<usize>]) -> IsotropyFamily {
    let seed_union: BTreeSet<usize> = seeds.iter().flatten().copied().collect();
    let mut members = lattice.conjugation_closure(&seed_union);
    let mut frontier: Vec<usize> = members.iter().copied().collect();
    while !frontier.is_empty() {
        let mut fresh = BTreeSet::new();
        let current: Vec<usize> = members.iter().copied().collect();
        for &a in &frontier {
            for &b in &current {
                let m = lattice.meet(a, b);
                if !members.contains(&m) {
                    fresh.insert(m);
                }
            }
        }
        let fresh = lattice.conjugation_closure(&fresh);
        frontier = fresh.difference(&members).copied().collect();
        members.extend(frontier.iter().copied());
    }
    debug_assert!(reachable(lattice, &seed_union, &members));
    let classes = classes_of(lattice, &members);
    IsotropyFamily { lattice: Arc::clone(lattice), members, classes }
}

/// Every member must be a seed, a conjugate of an earlier member or the
/// meet of two earlier members.
fn reachable(lattice: &SubgroupLattice, seeds: &BTreeSet<usize>, members: &BTreeSet<usize>) -> bool {
    let mut reached = seeds.clone();
    loop {
        let before = reached.len();
        let snapshot: Vec<usize> = reached.iter().copied().collect();
        for &a in &snapshot {
            for &b in &snapshot {
                reached.insert(lattice.meet(a, b));
            }
        }
        reached = lattice.conjugation_closure(&reached);
        if reached.len() == before {
            return reached == *members;
        }
    }
}

fn classes_of(lattice: &SubgroupLattice, members: &BTreeSet<usize>) -> Vec<usize> {
    members.iter().map(|&i| lattice.class_index(i)).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Family closure of explicit subgroup sets.
pub fn family_closure_of_subgroups(
    lattice: &Arc<SubgroupLattice>,
    seeds: &[BTreeSet<Subgroup>],
) -> Result<IsotropyFamily> {
    let seeds = seeds.iter().map(|s| to_indices(lattice, s)).collect::<Result<Vec<_>>>()?;
    Ok(family_closure(lattice, &seeds))
}

/// Isotropy of a join: `A ∪ B ∪ {H ∩ K : H ∈ A, K ∈ B}`.
pub fn join_isotropy(lattice: &SubgroupLattice, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = a.union(b).copied().collect();
    for &h in a {
        for &k in b {
            out.insert(lattice.meet(h, k));
        }
    }
    out
}

/// [`join_isotropy`] on explicit subgroup sets.
pub fn join_isotropy_of_subgroups(
    lattice: &SubgroupLattice,
    a: &BTreeSet<Subgroup>,
    b: &BTreeSet<Subgroup>,
) -> Result<BTreeSet<Subgroup>> {
    let joined = join_isotropy(lattice, &to_indices(lattice, a)?, &to_indices(lattice, b)?);
    Ok(joined.into_iter().map(|i| lattice.subgroup(i).clone()).collect())
}

fn to_indices(lattice: &SubgroupLattice, set: &BTreeSet<Subgroup>) -> Result<BTreeSet<usize>> {
    set.iter().map(|h| lattice.index_of(h)).collect()
}

/// Fixed-point dimensions of the orbit-type filtration `X_0 ⊆ … ⊆ X_r = X`
/// of a linear sphere, where `X_q` holds the points whose isotropy lies in
/// one of the first `q` classes of the lattice enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTable {
    /// `dim X^H` per lattice entry.
    pub sphere_dims: Vec<i64>,
    /// Lattice entries of `Iso(X)`.
    pub isotropy: BTreeSet<usize>,
    /// `table[q][i] = dim X_q^{H}` for lattice entry `i`, `0 <= q <= r`.
    pub table: Vec<Vec<i64>>,
}

/// A failed filtration identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationViolation {
    pub q: usize,
    pub subgroup: usize,
    pub identity: &'static str,
    pub expected: i64,
    pub found: i64,
}

impl FiltrationTable {
    pub fn steps(&self) -> usize {
        self.table.len() - 1
    }

    pub fn get(&self, q: usize, subgroup: usize) -> i64 {
        self.table[q][subgroup]
    }

    /// Checks the endpoint identities, monotonicity in `q` and, for every
    /// `H` in class `q` of the isotropy set, `dim X_q^H = dim X^H` and
    /// `dim X_{q-1}^H = max_{K > H} dim X^K`.
    pub fn check(&self, lattice: &SubgroupLattice) -> Vec<FiltrationViolation> {
        let mut out = Vec::new();
        let r = self.steps();
        let mut push = |q, i, identity, expected: i64, found: i64| {
            if expected != found {
                out.push(FiltrationViolation { q, subgroup: i, identity, expected, found });
            }
        };
        for i in 0..lattice.len() {
            push(0, i, "X_0 is empty", -1, self.table[0][i]);
            push(r, i, "X_r = X", self.sphere_dims[i], self.table[r][i]);
            for q in 1..=r {
                if self.table[q][i] < self.table[q - 1][i] {
                    push(q, i, "monotone in q", self.table[q - 1][i], self.table[q][i]);
                }
            }
        }
        for &i in &self.isotropy {
            let q = lattice.class_index(i) + 1;
            let above = lattice
                .overgroup_indices(i)
                .filter(|&k| k != i)
                .map(|k| self.sphere_dims[k])
                .max()
                .unwrap_or(-1);
            push(q, i, "X_q^H = X^H", self.sphere_dims[i], self.table[q][i]);
            push(q - 1, i, "X_(q-1)^H = union of X^K over K > H", above, self.table[q - 1][i]);
        }
        out
    }
}

/// Builds the filtration table of a sphere from its fixed-sphere dimensions.
///
/// `table(q, H)` is the largest `dim X^K` over isotropy groups `K ⊇ H` whose
/// class comes among the first `q`, or `-1` when there is none.
pub fn filtration_dims(lattice: &SubgroupLattice, sphere_dims: &[i64]) -> Result<FiltrationTable> {
    if sphere_dims.len() != lattice.len() || sphere_dims.iter().any(|&d| d < -1) {
        return Err(Error::Validation(format!(
            "expected {} sphere dimensions, each at least -1",
            lattice.len()
        )));
    }
    let fixed: Vec<usize> = sphere_dims.iter().map(|&d| (d + 1) as usize).collect();
    let isotropy = isotropy_indices(lattice, &fixed);
    let r = lattice.classes().len();
    let table = (0..=r)
        .map(|q| {
            (0..lattice.len())
                .map(|h| {
                    lattice
                        .overgroup_indices(h)
                        .filter(|k| isotropy.contains(k) && lattice.class_index(*k) < q)
                        .map(|k| sphere_dims[k])
                        .max()
                        .unwrap_or(-1)
                })
                .collect()
        })
        .collect();
    Ok(FiltrationTable { sphere_dims: sphere_dims.to_vec(), isotropy, table })
}
