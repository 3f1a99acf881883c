//! Real orthogonal representations of permutation groups, their fixed-point
//! dimensions and the isotropy sets of their unit spheres.
//!
//! `dim V^H` is computed twice: as the character average
//! `(1/|H|) Σ_{h∈H} χ(h)` rounded to an integer, and as the numerical rank of
//! the averaging projector `(1/|H|) Σ ρ(h)`. The two routes must agree.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Perm, PermGroup, Subgroup, SubgroupLattice};

/// Tolerance for homomorphism, orthogonality and class-function checks.
pub const HOMOMORPHISM_TOL: f64 = 1e-8;
/// Maximum distance of a character average from the nearest integer.
pub const INTEGRALITY_TOL: f64 = 1e-6;
/// Singular values above this fraction of the largest count towards the rank.
pub const RANK_REL_TOL: f64 = 1e-8;
/// Blocks up to this dimension are rank-checked through an SVD; larger
/// permutation blocks use the exact orbit count instead.
pub const SVD_MAX_DIM: usize = 256;

/// Description of a representation, as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RepSpec {
    /// One-dimensional trivial representation.
    Trivial,
    /// One-dimensional, every generator acting by `-1`; rejected when that is not a homomorphism.
    Sign,
    /// Left-regular permutation representation.
    Regular,
    /// The natural action on `points` = degree of the group.
    Permutation { points: usize },
    /// Natural permutation representation minus its trivial summand.
    Standard,
    /// Permutation action on the left cosets of the subgroup generated by `generators`.
    Cosets { generators: Vec<Perm> },
    /// Two-dimensional rotation by `2πj/n` of the single generator of a cyclic group.
    Rotation { n: u32, j: i64 },
    /// One orthogonal matrix (list of rows) per group generator.
    Matrix { entries: Vec<Vec<Vec<f64>>> },
    DirectSum { parts: Vec<RepSpec> },
    Repeat { part: Box<RepSpec>, multiplicity: usize },
}

impl RepSpec {
    /// Whether the regular representation occurs as a summand of this spec.
    pub fn contains_regular(&self) -> bool {
        match self {
            RepSpec::Regular => true,
            RepSpec::DirectSum { parts } => parts.iter().any(RepSpec::contains_regular),
            RepSpec::Repeat { part, multiplicity } => *multiplicity > 0 && part.contains_regular(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
enum Block {
    /// Per element, the image of each basis vector index.
    Permutation { images: Vec<Vec<usize>> },
    Dense { dim: usize, matrices: Vec<DMatrix<f64>> },
}

impl Block {
    fn dim(&self) -> usize {
        match self {
            Block::Permutation { images } => images[0].len(),
            Block::Dense { dim, .. } => *dim,
        }
    }

    fn trace(&self, g: usize) -> f64 {
        match self {
            Block::Permutation { images } => {
                images[g].iter().enumerate().filter(|(i, &x)| *i == x).count() as f64
            }
            Block::Dense { matrices, .. } => matrices[g].trace(),
        }
    }

    fn matrix(&self, g: usize) -> DMatrix<f64> {
        match self {
            Block::Permutation { images } => {
                let n = images[g].len();
                let mut m = DMatrix::zeros(n, n);
                for (j, &i) in images[g].iter().enumerate() {
                    m[(i, j)] = 1.0;
                }
                m
            }
            Block::Dense { matrices, .. } => matrices[g].clone(),
        }
    }

    fn projector(&self, h: &Subgroup) -> DMatrix<f64> {
        let n = self.dim();
        let scale = 1.0 / h.order() as f64;
        let mut p = DMatrix::zeros(n, n);
        match self {
            Block::Permutation { images } => {
                for x in h.elements() {
                    for (j, &i) in images[x].iter().enumerate() {
                        p[(i, j)] += scale;
                    }
                }
            }
            Block::Dense { matrices, .. } => {
                for x in h.elements() {
                    p += &matrices[x] * scale;
                }
            }
        }
        p
    }

    /// Independent count of `dim V^H` for this block.
    fn fixed_dim_cross_check(&self, h: &Subgroup) -> usize {
        match self {
            Block::Permutation { images } if self.dim() > SVD_MAX_DIM => {
                orbit_count(images, h)
            }
            _ => numerical_rank(&self.projector(h)),
        }
    }
}

/// Number of orbits of `H` on the points permuted by `images`.
fn orbit_count(images: &[Vec<usize>], h: &Subgroup) -> usize {
    let n = images[0].len();
    let mut seen = vec![false; n];
    let mut orbits = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(p) = stack.pop() {
            for x in h.elements() {
                let q = images[x][p];
                if !std::mem::replace(&mut seen[q], true) {
                    stack.push(q);
                }
            }
        }
    }
    orbits
}

/// Rank of `m` counting singular values above `RANK_REL_TOL` times the largest one.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().singular_values();
    let top = sv.max();
    if top <= f64::EPSILON {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_REL_TOL * top).count()
}

/// An orthogonal real representation, stored as a direct sum of blocks.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<PermGroup>,
    dim: usize,
    blocks: Vec<Block>,
    character: Vec<f64>,
}

impl Representation {
    fn from_blocks(group: &Arc<PermGroup>, blocks: Vec<Block>) -> Self {
        let dim = blocks.iter().map(Block::dim).sum();
        let character = (0..group.order())
            .map(|g| blocks.iter().map(|b| b.trace(g)).sum())
            .collect();
        Representation { group: Arc::clone(group), dim, blocks, character }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Character values indexed by element.
    pub fn character(&self) -> &[f64] {
        &self.character
    }

    /// Block-diagonal matrix of element `g`.
    pub fn matrix(&self, g: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        let mut offset = 0;
        for b in &self.blocks {
            let d = b.dim();
            m.view_mut((offset, offset), (d, d)).copy_from(&b.matrix(g));
            offset += d;
        }
        m
    }

    /// `(1/|H|) Σ_{h∈H} ρ(h)`, the orthogonal projection onto `V^H`.
    pub fn projector(&self, h: &Subgroup) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        let mut offset = 0;
        for b in &self.blocks {
            let d = b.dim();
            m.view_mut((offset, offset), (d, d)).copy_from(&b.projector(h));
            offset += d;
        }
        m
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::ParentMismatch);
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ok(Representation::from_blocks(&self.group, blocks))
    }

    /// The unrounded character average `(1/|H|) Σ χ(h)`.
    pub fn character_average(&self, h: &Subgroup) -> f64 {
        h.elements().map(|x| self.character[x]).sum::<f64>() / h.order() as f64
    }

    /// `dim V^H`, checked for integrality and against the projector rank.
    pub fn fixed_dim(&self, h: &Subgroup) -> Result<usize> {
        if !Arc::ptr_eq(h.parent(), &self.group) {
            return Err(Error::ParentMismatch);
        }
        let avg = self.character_average(h);
        let rounded = avg.round();
        if (avg - rounded).abs() >= INTEGRALITY_TOL || rounded < 0.0 {
            return Err(Error::NumericConsistency(format!(
                "character average {avg} over a subgroup of order {} is not a nonnegative integer",
                h.order()
            )));
        }
        let rank: usize = self.blocks.iter().map(|b| b.fixed_dim_cross_check(h)).sum();
        if rank != rounded as usize {
            return Err(Error::NumericConsistency(format!(
                "character average gives {rounded} but the projector has rank {rank}"
            )));
        }
        Ok(rank)
    }

    /// Dimension of the fixed sphere `S(V)^H = S(V^H)`; `-1` for the empty sphere.
    pub fn sphere_dim(&self, h: &Subgroup) -> Result<i64> {
        Ok(self.fixed_dim(h)? as i64 - 1)
    }

    /// `dim V^H` for every subgroup in the lattice.
    pub fn fixed_dim_table(&self, lattice: &SubgroupLattice) -> Result<FixedDimTable> {
        let dims = lattice.subgroups().iter().map(|h| self.fixed_dim(h)).collect::<Result<Vec<_>>>()?;
        for (i, &d) in dims.iter().enumerate() {
            for &k in lattice.minimal_overgroup_indices(i) {
                if dims[k] > d {
                    return Err(Error::NumericConsistency(format!(
                        "fixed dimension grows from {d} to {} along an inclusion",
                        dims[k]
                    )));
                }
            }
        }
        if dims[lattice.trivial_index()] != self.dim {
            return Err(Error::NumericConsistency("dim V^e differs from dim V".into()));
        }
        Ok(FixedDimTable { dims })
    }
}

/// `dim V^H` for each lattice entry, in lattice order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedDimTable {
    pub dims: Vec<usize>,
}

impl FixedDimTable {
    /// `dim S(V)^H` per lattice entry, `-1` meaning empty.
    pub fn sphere_dims(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64 - 1).collect()
    }
}

/// Lattice indices of `Iso_G(S(V))` given the fixed dimensions.
///
/// `H` is an isotropy group iff `V^H ≠ 0` and every minimal overgroup drops
/// the dimension: only then is `V^H` not covered by the proper subspaces `V^K`.
pub fn isotropy_indices(lattice: &SubgroupLattice, fixed_dims: &[usize]) -> BTreeSet<usize> {
    (0..lattice.len())
        .filter(|&i| {
            fixed_dims[i] >= 1
                && lattice
                    .minimal_overgroup_indices(i)
                    .iter()
                    .all(|&k| fixed_dims[k] < fixed_dims[i])
        })
        .collect()
}

/// `Iso_G(S(V))` as a set of subgroups.
pub fn isotropy_of_sphere(rep: &Representation, lattice: &SubgroupLattice) -> Result<BTreeSet<Subgroup>> {
    if !Arc::ptr_eq(rep.group(), lattice.group()) {
        return Err(Error::ParentMismatch);
    }
    let table = rep.fixed_dim_table(lattice)?;
    Ok(isotropy_indices(lattice, &table.dims)
        .into_iter()
        .map(|i| lattice.subgroup(i).clone())
        .collect())
}

/// Builds and validates the representation described by `spec`.
pub fn build_rep(group: &Arc<PermGroup>, spec: &RepSpec) -> Result<Representation> {
    let blocks = build_blocks(group, spec)?;
    let rep = Representation::from_blocks(group, blocks);
    validate_class_function(&rep)?;
    Ok(rep)
}

fn build_blocks(group: &Arc<PermGroup>, spec: &RepSpec) -> Result<Vec<Block>> {
    let n = group.order();
    Ok(match spec {
        RepSpec::Trivial => vec![dense_from_generators(group, 1, &vec![DMatrix::identity(1, 1); group.generators().len()])?],
        RepSpec::Sign => {
            let images = vec![DMatrix::from_element(1, 1, -1.0); group.generators().len()];
            vec![dense_from_generators(group, 1, &images)?]
        }
        RepSpec::Regular => {
            let images = (0..n).map(|g| (0..n).map(|h| group.mul(g, h)).collect()).collect();
            vec![Block::Permutation { images }]
        }
        RepSpec::Permutation { points } => {
            if *points != group.degree() {
                return Err(Error::Validation(format!(
                    "permutation action on {points} points requested for a group of degree {}",
                    group.degree()
                )));
            }
            vec![natural_block(group)]
        }
        RepSpec::Standard => vec![standard_block(group)],
        RepSpec::Cosets { generators } => vec![coset_block(group, generators)?],
        RepSpec::Rotation { n: m, j } => {
            if *m == 0 {
                return Err(Error::Validation("rotation order must be positive".into()));
            }
            if group.generators().len() != 1 {
                return Err(Error::Validation(format!(
                    "rotation representation needs a cyclic group given by one generator, got {}",
                    group.generators().len()
                )));
            }
            let theta = 2.0 * PI * (*j as f64) / (*m as f64);
            let (s, c) = theta.sin_cos();
            let r = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
            vec![dense_from_generators(group, 2, &[r])?]
        }
        RepSpec::Matrix { entries } => {
            if entries.len() != group.generators().len() {
                return Err(Error::Validation(format!(
                    "{} matrices given for {} generators",
                    entries.len(),
                    group.generators().len()
                )));
            }
            let dim = entries.first().map_or(0, Vec::len);
            let mut images = Vec::new();
            for rows in entries {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::Validation(format!("every matrix must be {dim}x{dim}")));
                }
                images.push(DMatrix::from_fn(dim, dim, |i, k| rows[i][k]));
            }
            if dim == 0 && group.generators().is_empty() {
                return Err(Error::Validation("cannot infer the dimension of a matrix representation of a group without generators".into()));
            }
            vec![dense_from_generators(group, dim, &images)?]
        }
        RepSpec::DirectSum { parts } => {
            let mut blocks = Vec::new();
            for p in parts {
                blocks.extend(build_blocks(group, p)?);
            }
            blocks
        }
        RepSpec::Repeat { part, multiplicity } => {
            let once = build_blocks(group, part)?;
            let mut blocks = Vec::new();
            for _ in 0..*multiplicity {
                blocks.extend(once.iter().cloned());
            }
            blocks
        }
    })
}

fn natural_block(group: &PermGroup) -> Block {
    Block::Permutation { images: group.elements().iter().map(|p| p.images().to_vec()).collect() }
}

/// Orthonormal (Helmert) basis of the complement of `(1, .., 1)` in `R^n`, as columns.
fn helmert_basis(n: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(n, n.saturating_sub(1));
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            b[(i, k - 1)] = 1.0 / norm;
        }
        b[(k, k - 1)] = -(k as f64) / norm;
    }
    b
}

fn standard_block(group: &PermGroup) -> Block {
    let n = group.degree();
    let basis = helmert_basis(n);
    let natural = natural_block(group);
    let matrices = (0..group.order())
        .map(|g| basis.transpose() * natural.matrix(g) * &basis)
        .collect();
    Block::Dense { dim: n - 1, matrices }
}

fn coset_block(group: &Arc<PermGroup>, generators: &[Perm]) -> Result<Block> {
    let gens = generators
        .iter()
        .map(|p| {
            group
                .index_of(p)
                .ok_or_else(|| Error::Validation(format!("{p:?} is not an element of the group")))
        })
        .collect::<Result<Vec<_>>>()?;
    let h = Subgroup::generated_by(group, &gens);
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    for x in 0..group.order() {
        if coset_of[x] == usize::MAX {
            for k in h.elements() {
                coset_of[group.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
    }
    let images = (0..group.order())
        .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
        .collect();
    Ok(Block::Permutation { images })
}

/// Extends generator images to every element along the breadth-first tree
/// and checks orthogonality and the homomorphism property.
fn dense_from_generators(group: &PermGroup, dim: usize, images: &[DMatrix<f64>]) -> Result<Block> {
    let mut worst_orth: f64 = 0.0;
    for m in images {
        worst_orth = worst_orth.max(max_abs(&(m * m.transpose() - DMatrix::identity(dim, dim))));
    }
    if worst_orth > HOMOMORPHISM_TOL {
        return Err(Error::Validation(format!(
            "generator images are not orthogonal; worst deviation {worst_orth:.3e}"
        )));
    }
    let mut matrices: Vec<DMatrix<f64>> = Vec::with_capacity(group.order());
    matrices.push(DMatrix::identity(dim, dim));
    for i in 1..group.order() {
        let (parent, pos) = group.bfs_parent(i).expect("non-identity elements have a parent");
        matrices.push(&matrices[parent] * &images[pos]);
    }
    let mut worst_hom: f64 = 0.0;
    for (x, mx) in matrices.iter().enumerate() {
        for (pos, &g) in group.generator_indices().iter().enumerate() {
            let dev = max_abs(&(mx * &images[pos] - &matrices[group.mul(x, g)]));
            worst_hom = worst_hom.max(dev);
        }
    }
    if worst_hom > HOMOMORPHISM_TOL {
        return Err(Error::Validation(format!(
            "generator images do not define a homomorphism; worst deviation {worst_hom:.3e}"
        )));
    }
    Ok(Block::Dense { dim, matrices })
}

fn validate_class_function(rep: &Representation) -> Result<()> {
    let g = rep.group();
    let mut worst: f64 = 0.0;
    for x in 0..g.order() {
        for &s in g.generator_indices() {
            worst = worst.max((rep.character[g.conjugate(s, x)] - rep.character[x]).abs());
        }
    }
    if worst > HOMOMORPHISM_TOL {
        return Err(Error::Validation(format!(
            "character is not a class function; worst deviation {worst:.3e}"
        )));
    }
    Ok(())
}

pub(crate) fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}
