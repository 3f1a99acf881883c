use std::collections::BTreeSet;
use std::sync::Arc;

use equistab::family::{family_closure, join_isotropy};
use equistab::group::{
    abelianization, all_subgroups, named, FgAbelianGroup, FiniteGroup, Perm, PermGroup, SubgroupLattice,
};
use equistab::rep::{build_rep, isotropy_indices, RepSpec};
use equistab::stable::{check_profile, stable_range, Profile, Schedule, Universe, UniverseSpec};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn closure(g: &PermGroup, start: &[usize]) -> BTreeSet<usize> {
    let mut members: BTreeSet<usize> = start.iter().copied().collect();
    members.insert(0);
    loop {
        let products: Vec<usize> =
            members.iter().flat_map(|&a| members.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        let before = members.len();
        members.extend(products);
        if members.len() == before {
            return members;
        }
    }
}

fn subgroups_by_subsets(g: &PermGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((subset, next)) = stack.pop() {
        let members = closure(g, &subset);
        if subset.len() < n.ilog2() as usize {
            for x in (next..n).filter(|x| !members.contains(x)) {
                let mut s = subset.clone();
                s.push(x);
                stack.push((s, x + 1));
            }
        }
        out.insert(members.into_iter().collect());
    }
    out
}

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (4usize..=5)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(perm(d), 0..=3)))
        .prop_filter_map("order above 24", |(d, gens)| PermGroup::enumerate(d, gens, 25).ok())
}

const NAMES: [&str; 8] = ["C2", "C3", "C4", "V4", "S3", "D4", "Q8", "A4"];

fn block() -> impl Strategy<Value = RepSpec> {
    prop_oneof![
        Just(RepSpec::Trivial),
        Just(RepSpec::Sign),
        Just(RepSpec::Standard),
        Just(RepSpec::Regular),
        (1usize..=2).prop_map(|m| RepSpec::Repeat { part: Box::new(RepSpec::Standard), multiplicity: m }),
    ]
}

fn universe(name: &str, blocks: Vec<RepSpec>) -> Option<Universe> {
    let g = Arc::new(named::by_name(name).unwrap());
    Universe::new(Arc::new(SubgroupLattice::new(g)), UniverseSpec { blocks, schedule: Schedule::Cyclic }).ok()
}

proptest! {
    #[test]
    fn subgroups_match_subset_closure(g in small_group()) {
        let g = Arc::new(g);
        let ours: BTreeSet<Vec<usize>> = all_subgroups(&g).iter().map(|h| h.elements().collect()).collect();
        prop_assert_eq!(ours, subgroups_by_subsets(&g));
    }

    #[test]
    fn invariant_factor_normal_form(orders in prop::collection::vec(1u64..=40, 0..5), free in 0usize..3, d in 1u64..100) {
        prop_assume!(orders.iter().product::<u64>() <= 10_000);
        let a = FgAbelianGroup::from_cyclic_orders(free, &orders);
        prop_assert_eq!(a.free_rank(), free);
        prop_assert_eq!(a.torsion_order(), orders.iter().product::<u64>());
        let f = a.invariant_factors();
        prop_assert!(f.iter().all(|&x| x >= 2));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        let killed: u64 = orders.iter().map(|&n| gcd(n, d)).product();
        prop_assert_eq!(a.torsion_elements_killed_by(d), killed);
    }

    #[test]
    fn abelian_products_abelianize_to_themselves(orders in prop::collection::vec(2usize..=6, 1..=3)) {
        prop_assume!(orders.iter().product::<usize>() <= 200);
        let name = orders.iter().map(|n| format!("C{n}")).collect::<Vec<_>>().join("x");
        let g = named::by_name(&name).unwrap();
        let expected = FgAbelianGroup::from_cyclic_orders(0, &orders.iter().map(|&n| n as u64).collect::<Vec<_>>());
        prop_assert_eq!(abelianization(&g), expected);
    }

    #[test]
    fn fixed_dimensions_behave(name in prop::sample::select(NAMES.to_vec()), a in block(), b in block()) {
        let g = Arc::new(named::by_name(name).unwrap());
        let lattice = SubgroupLattice::new(g.clone());
        let (Ok(ra), Ok(rb)) = (build_rep(&g, &a), build_rep(&g, &b)) else { return Ok(()) };
        let da = ra.fixed_dim_table(&lattice).unwrap().dims;
        let db = rb.fixed_dim_table(&lattice).unwrap().dims;
        let sum = ra.direct_sum(&rb).unwrap();
        let ds = sum.fixed_dim_table(&lattice).unwrap().dims;
        for i in 0..lattice.len() {
            prop_assert_eq!(ds[i], da[i] + db[i]);
            for &k in lattice.minimal_overgroup_indices(i) {
                prop_assert!(da[k] <= da[i]);
            }
        }
        prop_assert_eq!(da[lattice.trivial_index()], ra.dim());
        prop_assert_eq!(
            join_isotropy(&lattice, &isotropy_indices(&lattice, &da), &isotropy_indices(&lattice, &db)),
            isotropy_indices(&lattice, &ds)
        );
    }

    #[test]
    fn family_closure_is_least_closed_superset(name in prop::sample::select(NAMES.to_vec()), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let lattice = Arc::new(SubgroupLattice::new(Arc::new(named::by_name(name).unwrap())));
        let seeds: BTreeSet<usize> = picks.iter().map(|p| p.index(lattice.len())).collect();
        let fam = family_closure(&lattice, std::slice::from_ref(&seeds));
        prop_assert!(seeds.is_subset(fam.member_indices()));
        prop_assert!(fam.is_closed());
        let again = family_closure(&lattice, &[fam.member_indices().clone()]);
        prop_assert_eq!(again.member_indices(), fam.member_indices());

        // naive fixpoint from the seeds
        let mut naive = lattice.conjugation_closure(&seeds);
        loop {
            let meets: BTreeSet<usize> = naive.iter().flat_map(|&h| naive.iter().map(move |&k| (h, k))).map(|(h, k)| lattice.meet(h, k)).collect();
            let next = lattice.conjugation_closure(&naive.union(&meets).copied().collect());
            if next == naive {
                break;
            }
            naive = next;
        }
        prop_assert_eq!(&naive, fam.member_indices());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_are_monotone(
        name in prop::sample::select(NAMES.to_vec()),
        blocks in prop::collection::vec(block(), 1..=3),
        profile in prop::sample::select(Profile::ALL.to_vec()),
        k in 0u32..3,
    ) {
        let Some(u) = universe(name, blocks) else { return Ok(()) };
        let c = stable_range(&u, k, profile, 40).unwrap();
        let passes = |m, n, k| check_profile(&u, profile, m, n, k).unwrap().passes();
        prop_assert!(passes(c.m, c.n, k));
        prop_assert!(passes(c.m, c.n + 1, k) && passes(c.m, c.n + 2, k));
        if c.n > c.m {
            prop_assert!(!passes(c.m, c.n - 1, k));
        }
        if k > 0 {
            prop_assert!(passes(c.m, c.n, k - 1));
            let lower = stable_range(&u, k - 1, profile, 40).unwrap();
            prop_assert!((lower.m, lower.n) <= (c.m, c.n));
        }
    }
}
