use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::FiniteGroup;
use super::subgroup::close;

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_m`
/// with `d_1 | d_2 | … | d_m` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "AbelianRepr", try_from = "AbelianRepr")]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct AbelianRepr {
    free_rank: usize,
    invariant_factors: Vec<u64>,
    display: String,
}

impl From<FgAbelianGroup> for AbelianRepr {
    fn from(a: FgAbelianGroup) -> Self {
        AbelianRepr { display: a.to_string(), free_rank: a.free_rank, invariant_factors: a.torsion }
    }
}

impl TryFrom<AbelianRepr> for FgAbelianGroup {
    type Error = String;

    fn try_from(r: AbelianRepr) -> Result<Self, String> {
        let g = FgAbelianGroup::from_cyclic_orders(r.free_rank, &r.invariant_factors);
        if g.torsion != r.invariant_factors {
            return Err(format!("{:?} is not an invariant-factor chain", r.invariant_factors));
        }
        Ok(g)
    }
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        FgAbelianGroup::from_cyclic_orders(0, &[n])
    }

    /// `Z^free_rank ⊕ ⨁ Z/n_i` for arbitrary positive `n_i`, normalized to
    /// invariant-factor form through the primary decomposition.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            assert!(n > 0, "cyclic orders must be positive");
            for (p, e) in factorize(n) {
                primary.entry(p).or_default().push(e);
            }
        }
        FgAbelianGroup::from_primary(free_rank, primary)
    }

    /// Builds the group from `p -> exponents` of its primary cyclic factors.
    pub fn from_primary(free_rank: usize, mut primary: BTreeMap<u64, Vec<u32>>) -> Self {
        let width = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; width];
        for (p, exps) in primary.iter_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, &e) in exps.iter().enumerate() {
                torsion[slot] *= p.pow(e);
            }
        }
        torsion.retain(|&d| d > 1);
        torsion.reverse();
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.torsion
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        FgAbelianGroup::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Number of cyclic summands of order a power of 2 in the primary decomposition.
    pub fn two_torsion_multiplicity(&self) -> usize {
        self.torsion.iter().filter(|&&d| d % 2 == 0).count()
    }

    /// Number of elements `x` of the torsion part with `d x = 0`.
    pub fn torsion_elements_killed_by(&self, d: u64) -> u64 {
        self.torsion.iter().map(|&n| gcd(n, d)).product()
    }
}

impl<'a> std::iter::Sum<&'a FgAbelianGroup> for FgAbelianGroup {
    fn sum<I: Iterator<Item = &'a FgAbelianGroup>>(iter: I) -> Self {
        iter.fold(FgAbelianGroup::trivial(), |acc, g| acc.direct_sum(g))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Q / [Q, Q]` in invariant-factor form.
///
/// The commutator subgroup is generated directly from all commutators; the
/// abelian quotient is then decomposed prime by prime from the number of
/// its elements killed by each `p^k`.
pub fn abelianization<G: FiniteGroup + ?Sized>(group: &G) -> FgAbelianGroup {
    let n = group.order();
    let mut commutators: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            let c = group.mul(group.mul(a, b), group.inv(group.mul(b, a)));
            if !std::mem::replace(&mut seen[c], true) {
                commutators.push(c);
            }
        }
    }
    let derived = close(group, vec![0], &commutators);
    let derived_order = derived.count();
    let quotient_order = (n / derived_order) as u64;

    // order of x [Q,Q] in the quotient
    let coset_order: Vec<u64> = (0..n)
        .map(|x| {
            let mut y = x;
            let mut m = 1;
            while !derived.contains(y) {
                y = group.mul(y, x);
                m += 1;
            }
            m
        })
        .collect();

    let mut primary = BTreeMap::new();
    for (p, top) in factorize(quotient_order) {
        let mut log_counts = vec![0u32];
        for k in 1..=top {
            let pk = p.pow(k);
            let killed = coset_order.iter().filter(|&&o| pk % o == 0).count() / derived_order;
            log_counts.push(exact_log(killed as u64, p));
        }
        // at_least[k] = number of cyclic factors with exponent >= k
        let at_least: Vec<u32> =
            (1..log_counts.len()).map(|k| log_counts[k] - log_counts[k - 1]).collect();
        let mut exps = Vec::new();
        for (k, &count) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            exps.extend(std::iter::repeat_n(k as u32 + 1, (count - next) as usize));
        }
        primary.insert(p, exps);
    }
    FgAbelianGroup::from_primary(0, primary)
}

fn exact_log(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "count is not a power of {p}");
        n /= p;
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn normal_form_recombines_coprime_parts() {
        assert_eq!(FgAbelianGroup::from_cyclic_orders(0, &[2, 3]).invariant_factors(), &[6]);
        assert_eq!(FgAbelianGroup::from_cyclic_orders(0, &[4, 6, 1]).invariant_factors(), &[2, 12]);
        assert_eq!(FgAbelianGroup::from_cyclic_orders(2, &[]).to_string(), "Z^2");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(
            FgAbelianGroup::from_cyclic_orders(2, &[2, 6]).to_string(),
            "Z^2 ⊕ Z/2 ⊕ Z/6"
        );
    }

    #[test]
    fn abelianizations_of_small_groups() {
        let ab = |g: &crate::group::PermGroup| abelianization(g).invariant_factors().to_vec();
        assert_eq!(ab(&named::symmetric(3).unwrap()), vec![2]);
        assert_eq!(ab(&named::quaternion8().unwrap()), vec![2, 2]);
        assert_eq!(ab(&named::alternating(4).unwrap()), vec![3]);
        assert_eq!(ab(&named::cyclic(1).unwrap()), Vec::<u64>::new());
        assert_eq!(ab(&named::cyclic(12).unwrap()), vec![12]);
        assert_eq!(ab(&named::dihedral(4).unwrap()), vec![2, 2]);
        assert_eq!(ab(&named::symmetric(4).unwrap()), vec![2]);
    }

    #[test]
    fn serde_carries_display_and_rejects_broken_chains() {
        let g = FgAbelianGroup::from_cyclic_orders(1, &[2, 3]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"free_rank":1,"invariant_factors":[6],"display":"Z ⊕ Z/6"}"#);
        assert_eq!(serde_json::from_str::<FgAbelianGroup>(&json).unwrap(), g);
        let bad = r#"{"free_rank":0,"invariant_factors":[3,2],"display":""}"#;
        assert!(serde_json::from_str::<FgAbelianGroup>(bad).is_err());
    }
}
