//! Limit groups `⨁_{(H) ⊆ F} ω_i(BWH)` for `i = 0, 1`, the pointed variant
//! and the Burnside-ring cross-check.
//!
//! `ω_0(BWH) = Z` and `ω_1(BWH) = Z/2 ⊕ WH_ab`; higher `ω_i` are reported
//! only symbolically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::IsotropyFamily;
use crate::group::{abelianization, weyl_group, FgAbelianGroup, FiniteGroup, Perm};

/// `ω_0(BW) = Z` for any finite `W`.
pub fn omega0<G: FiniteGroup + ?Sized>(_wh: &G) -> FgAbelianGroup {
    FgAbelianGroup::free(1)
}

/// `ω_1(BW) = Z/2 ⊕ W_ab`.
pub fn omega1<G: FiniteGroup + ?Sized>(wh: &G) -> FgAbelianGroup {
    FgAbelianGroup::cyclic(2).direct_sum(&abelianization(wh))
}

/// One conjugacy class `(H_class)` of the family with its Weyl group data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummand {
    /// Position `i` of `(H_i)` in the enumeration of all subgroup classes.
    pub class: usize,
    pub order: usize,
    pub conjugates: usize,
    pub generators: Vec<Perm>,
    pub weyl_order: usize,
    pub weyl_abelianization: FgAbelianGroup,
    pub omega0: FgAbelianGroup,
    pub omega1: FgAbelianGroup,
}

/// The group in degree `i` with its per-class summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitEntry {
    pub i: u32,
    pub total: FgAbelianGroup,
    pub summands: Vec<FgAbelianGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedVariant {
    pub trivial_block_present: bool,
    pub doubled: bool,
    pub i0: LimitEntry,
    pub i1: LimitEntry,
    pub symbolic: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub classes: Vec<ClassSummand>,
    pub i0: LimitEntry,
    pub i1: LimitEntry,
    pub symbolic: Vec<String>,
    pub pointed_variant: PointedVariant,
}

/// Weyl group data for every class of the family.
pub fn class_summands(family: &IsotropyFamily) -> Vec<ClassSummand> {
    let lattice = family.lattice();
    family
        .class_indices()
        .iter()
        .map(|&c| {
            let class = &lattice.classes()[c];
            let h = &class.representative;
            let wh = weyl_group(h);
            ClassSummand {
                class: c + 1,
                order: h.order(),
                conjugates: class.size(),
                generators: h.generators().into_iter().map(|g| lattice.group().element(g).clone()).collect(),
                weyl_order: wh.order(),
                weyl_abelianization: abelianization(&wh),
                omega0: omega0(&wh),
                omega1: omega1(&wh),
            }
        })
        .collect()
}

fn entry(i: u32, summands: Vec<FgAbelianGroup>) -> LimitEntry {
    LimitEntry { i, total: summands.iter().sum(), summands }
}

fn degree_summands(classes: &[ClassSummand], i: u32) -> Result<Vec<FgAbelianGroup>> {
    match i {
        0 => Ok(classes.iter().map(|c| c.omega0.clone()).collect()),
        1 => Ok(classes.iter().map(|c| c.omega1.clone()).collect()),
        _ => Err(Error::Domain(format!("ω_{i} has no closed form here; only i = 0, 1 are evaluated"))),
    }
}

/// `⨁_{(H) ⊆ F} ω_i(BWH)` for `i ∈ {0, 1}`.
pub fn unpointed_limit_groups(family: &IsotropyFamily, i: u32) -> Result<LimitEntry> {
    Ok(entry(i, degree_summands(&class_summands(family), i)?))
}

/// The pointed variant: equal to the unpointed groups when the universe
/// contains the trivial representation, otherwise every summand is
/// `ω_i(BWH ⨿ BWH) = ω_i(BWH) ⊕ ω_i(BWH)`.
pub fn pointed_limit_groups(family: &IsotropyFamily, i: u32, trivial_block_present: bool) -> Result<LimitEntry> {
    pointed_entry(&class_summands(family), i, trivial_block_present)
}

fn pointed_entry(classes: &[ClassSummand], i: u32, trivial_block_present: bool) -> Result<LimitEntry> {
    let summands = degree_summands(classes, i)?;
    if trivial_block_present {
        return Ok(entry(i, summands));
    }
    Ok(entry(i, summands.iter().map(|s| s.direct_sum(s)).collect()))
}

/// Evaluates both degrees, the symbolic higher summands and the pointed variant.
pub fn splitting(family: &IsotropyFamily, trivial_block_present: bool) -> SplittingReport {
    let classes = class_summands(family);
    let unpointed = |i| entry(i, degree_summands(&classes, i).expect("degree 0 or 1"));
    let pointed = |i| pointed_entry(&classes, i, trivial_block_present).expect("degree 0 or 1");
    let symbolic = classes.iter().map(|c| format!("ω_i(BW(H_{}))", c.class)).collect();
    let pointed_symbolic = classes
        .iter()
        .map(|c| {
            if trivial_block_present {
                format!("ω_i(BW(H_{}))", c.class)
            } else {
                format!("ω_i(BW(H_{0}) ⨿ BW(H_{0}))", c.class)
            }
        })
        .collect();
    SplittingReport {
        i0: unpointed(0),
        i1: unpointed(1),
        symbolic,
        pointed_variant: PointedVariant {
            trivial_block_present,
            doubled: !trivial_block_present,
            i0: pointed(0),
            i1: pointed(1),
            symbolic: pointed_symbolic,
        },
        classes,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideCheck {
    pub status: CheckStatus,
    /// Number of conjugacy classes of subgroups of `G`.
    pub burnside_rank: usize,
    pub family_classes: usize,
    /// Classes `(H_i)` of `G` absent from the family.
    pub missing: Vec<usize>,
    pub detail: String,
}

/// With the regular representation among the blocks, the family must hold
/// every subgroup class, so the rank of the degree-0 group equals the rank
/// of the Burnside ring.
pub fn burnside_cross_check(family: &IsotropyFamily, regular_block_present: bool) -> BurnsideCheck {
    let lattice = family.lattice();
    let burnside_rank = lattice.classes().len();
    let family_classes = family.class_indices().len();
    if !regular_block_present {
        return BurnsideCheck {
            status: CheckStatus::NotApplicable,
            burnside_rank,
            family_classes,
            missing: Vec::new(),
            detail: "not applicable: no block contains the regular representation".into(),
        };
    }
    let missing: Vec<usize> =
        (0..burnside_rank).filter(|c| !family.class_indices().contains(c)).map(|c| c + 1).collect();
    let rank0 = class_summands(family).iter().map(|c| c.omega0.free_rank()).sum::<usize>();
    let ok = missing.is_empty() && rank0 == burnside_rank;
    BurnsideCheck {
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        burnside_rank,
        family_classes,
        detail: if ok {
            format!("degree-0 rank {rank0} equals the Burnside ring rank {burnside_rank}")
        } else {
            format!("degree-0 rank {rank0}, Burnside ring rank {burnside_rank}, missing classes {missing:?}")
        },
        missing,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;
    use std::sync::Arc;

    use super::*;
    use crate::family::family_closure;
    use crate::group::{named, SubgroupLattice};

    fn family_of(name: &str, seeds: impl Fn(&SubgroupLattice) -> BTreeSet<usize>) -> IsotropyFamily {
        let l = Arc::new(SubgroupLattice::new(Arc::new(named::by_name(name).unwrap())));
        let s = seeds(&l);
        family_closure(&l, &[s])
    }

    #[test]
    fn omega_closed_forms() {
        let s3 = named::symmetric(3).unwrap();
        assert_eq!(omega0(&s3), FgAbelianGroup::free(1));
        assert_eq!(omega1(&s3).invariant_factors(), &[2, 2]);
        let c3 = named::cyclic(3).unwrap();
        assert_eq!(omega1(&c3).invariant_factors(), &[6]);
        let trivial = named::cyclic(1).unwrap();
        assert_eq!(omega1(&trivial).invariant_factors(), &[2]);

        let q8 = Arc::new(named::quaternion8().unwrap());
        let l = SubgroupLattice::new(q8.clone());
        let centre = l.subgroups().iter().find(|h| h.order() == 2).unwrap();
        let w = weyl_group(centre);
        assert_eq!(omega0(&w).to_string(), "Z");
        assert_eq!(omega1(&w).invariant_factors(), &[2, 2, 2]);
    }

    #[test]
    fn c2_sign_family() {
        let f = family_of("C2", |l| BTreeSet::from([l.trivial_index()]));
        assert_eq!(unpointed_limit_groups(&f, 0).unwrap().total.to_string(), "Z");
        assert_eq!(unpointed_limit_groups(&f, 1).unwrap().total.invariant_factors(), &[2, 2]);
        assert_eq!(pointed_limit_groups(&f, 0, false).unwrap().total, FgAbelianGroup::free(2));
        assert_eq!(pointed_limit_groups(&f, 1, false).unwrap().total.invariant_factors(), &[2, 2, 2, 2]);
        assert_eq!(pointed_limit_groups(&f, 1, true).unwrap(), unpointed_limit_groups(&f, 1).unwrap());
        assert!(matches!(unpointed_limit_groups(&f, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn s3_families() {
        let standard = family_of("S3", |l| (0..l.len()).filter(|&i| l.subgroup(i).order() <= 2).collect());
        let report = splitting(&standard, false);
        assert_eq!(report.i0.total, FgAbelianGroup::free(2));
        assert_eq!(report.i1.total.invariant_factors(), &[2, 2, 2]);
        assert_eq!(report.symbolic, vec!["ω_i(BW(H_3))", "ω_i(BW(H_4))"]);
        assert_eq!(report.classes.iter().map(|c| c.weyl_order).collect::<Vec<_>>(), vec![1, 6]);

        let all = family_of("S3", |l| (0..l.len()).collect());
        let report = splitting(&all, true);
        assert_eq!(report.i0.total, FgAbelianGroup::free(4));
        assert_eq!(report.pointed_variant.i0, report.i0);
        assert_eq!(burnside_cross_check(&all, true).status, CheckStatus::Pass);
        let check = burnside_cross_check(&standard, true);
        assert_eq!(check.status, CheckStatus::Fail);
        assert_eq!(check.missing, vec![1, 2]);
        assert_eq!(burnside_cross_check(&standard, false).status, CheckStatus::NotApplicable);
    }

    #[test]
    fn c2_regular_burnside_rank() {
        let f = family_of("C2", |l| (0..l.len()).collect());
        let check = burnside_cross_check(&f, true);
        assert_eq!((check.status, check.burnside_rank), (CheckStatus::Pass, 2));
    }

    #[test]
    fn report_round_trips() {
        let f = family_of("S3", |l| (0..l.len()).collect());
        let report = splitting(&f, false);
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(serde_json::from_str::<SplittingReport>(&json).unwrap(), report);
    }
}
