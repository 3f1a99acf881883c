use super::perm::FiniteGroup;
use super::subgroup::{normalizer, Subgroup};
use crate::error::{Error, Result};

/// `numerator / kernel` for a normal subgroup `kernel` of `numerator`, with a
/// full coset multiplication table. Coset 0 is the kernel itself.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    numerator: Subgroup,
    kernel: Subgroup,
    cosets: Vec<usize>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl QuotientGroup {
    pub fn new(numerator: Subgroup, kernel: Subgroup) -> Result<Self> {
        if !kernel.same_parent(&numerator) {
            return Err(Error::ParentMismatch);
        }
        let g = numerator.parent().clone();
        if !kernel.is_subgroup_of(&numerator) {
            return Err(Error::NumericConsistency("kernel is not contained in the numerator".into()));
        }
        for n in numerator.elements() {
            if kernel.elements().any(|k| !kernel.contains(g.conjugate(n, k))) {
                return Err(Error::NumericConsistency("kernel is not normal in the numerator".into()));
            }
        }
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut cosets = Vec::new();
        for x in numerator.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for k in kernel.elements() {
                coset_of[g.mul(x, k)] = cosets.len();
            }
            cosets.push(x);
        }
        let table: Vec<Vec<usize>> = cosets
            .iter()
            .map(|&a| cosets.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
            .collect();
        let inverses = cosets.iter().map(|&a| coset_of[g.inv(a)]).collect();
        Ok(QuotientGroup { numerator, kernel, cosets, table, inverses })
    }

    pub fn numerator(&self) -> &Subgroup {
        &self.numerator
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Coset representatives (smallest element index of each coset).
    pub fn cosets(&self) -> &[usize] {
        &self.cosets
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

impl FiniteGroup for QuotientGroup {
    fn order(&self) -> usize {
        self.cosets.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// `WH = N_G(H) / H`.
pub fn weyl_group(h: &Subgroup) -> QuotientGroup {
    QuotientGroup::new(normalizer(h), h.clone()).expect("a subgroup is normal in its normalizer")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{named, SubgroupLattice};

    #[test]
    fn weyl_of_transposition_in_sym3_is_trivial() {
        let g = Arc::new(named::symmetric(3).unwrap());
        let t = Subgroup::generated_by(&g, &[g.generator_indices()[0]]);
        assert_eq!(t.order(), 2);
        assert_eq!(normalizer(&t), t);
        assert_eq!(weyl_group(&t).order(), 1);
    }

    #[test]
    fn weyl_of_trivial_is_whole_group() {
        let g = Arc::new(named::symmetric(3).unwrap());
        let w = weyl_group(&Subgroup::trivial(&g));
        assert_eq!(w.order(), 6);
        assert_eq!(normalizer(&Subgroup::whole(&g)).order(), 6);
    }

    #[test]
    fn weyl_of_quaternion_center_has_order_four() {
        let g = Arc::new(named::quaternion8().unwrap());
        let lattice = SubgroupLattice::new(g);
        let center = lattice.subgroups().iter().find(|s| s.order() == 2).unwrap();
        assert_eq!(weyl_group(center).order(), 4);
    }

    #[test]
    fn non_normal_kernel_is_rejected() {
        let g = Arc::new(named::symmetric(3).unwrap());
        let t = Subgroup::generated_by(&g, &[g.generator_indices()[0]]);
        assert!(QuotientGroup::new(Subgroup::whole(&g), t).is_err());
    }

    #[test]
    fn coset_tables_are_groups() {
        for g in [named::symmetric(4).unwrap(), named::dihedral(4).unwrap(), named::quaternion8().unwrap()] {
            let g = Arc::new(g);
            let lattice = SubgroupLattice::new(g.clone());
            for h in lattice.subgroups() {
                let w = weyl_group(h);
                let n = w.order();
                for a in 0..n {
                    assert_eq!(w.mul(a, w.inv(a)), 0);
                    assert_eq!(w.mul(0, a), a);
                    for b in 0..n {
                        for c in 0..n {
                            assert_eq!(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
                        }
                    }
                }
            }
        }
    }
}
