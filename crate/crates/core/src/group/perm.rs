use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the order of an enumerated group.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// A bijection of `{0, .., degree - 1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 0..{n}"
                )));
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                let next = cycle[(pos + 1) % cycle.len()];
                if p >= degree || next >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle {cycle:?} leaves 0..{degree}"
                    )));
                }
                images[p] = next;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point]
    }

    /// `self * other`, acting on points as `self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Number of points fixed by the permutation.
    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// Group structure on the indices `0..order`, index 0 being the identity.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// A finite permutation group with all of its elements enumerated.
///
/// Elements are listed breadth-first from the identity, trying generators in
/// input order; element `i * g` is discovered from element `i`.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    generator_indices: Vec<usize>,
    elements: Vec<Perm>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    // (parent, generator position) with elements[i] = elements[parent] * generators[pos]
    bfs_parent: Vec<Option<(usize, usize)>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Closes `generators` under composition, failing if the closure grows past `cap`.
    pub fn enumerate(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {bad:?} does not have degree {degree}"
            )));
        }
        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Perm, usize> = HashMap::from([(identity, 0)]);
        let mut bfs_parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (pos, g) in generators.iter().enumerate() {
                let next = elements[i].compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::SizeLimit { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                    bfs_parent.push(Some((i, pos)));
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                table[a * n + b] = index[&pa.compose(pb)] as u32;
            }
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        Ok(PermGroup {
            degree,
            generators,
            generator_indices,
            elements,
            table,
            inverses,
            bfs_parent,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators, in input order.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        // Linear scan; only used off the hot paths.
        self.elements.iter().position(|q| q == p)
    }

    /// Breadth-first parent of element `i`: `(parent, generator position)`.
    pub fn bfs_parent(&self, i: usize) -> Option<(usize, usize)> {
        self.bfs_parent[i]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl FiniteGroup for PermGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}
