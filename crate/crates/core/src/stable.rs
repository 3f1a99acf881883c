//! Stable-range certificates.
//!
//! A universe is a list of block representations repeated cyclically, so
//! `U_i` is block `(i - 1) mod b` and every block occurs infinitely often.
//! Each profile evaluates a list of isotropy equalities and integer
//! inequalities on fixed-sphere dimensions; [`stable_range`] returns the
//! first indices at which all of them hold. That is a certified bound, not a
//! claim about the true stable range.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{family_closure, join_isotropy, IsotropyFamily};
use crate::group::SubgroupLattice;
use crate::rep::{build_rep, isotropy_indices, RepSpec, Representation};

/// Default bound on the indices scanned by [`stable_range`].
pub const DEFAULT_HORIZON: usize = 64;

/// Wording attached to every answer of [`stable_range`].
pub const CERTIFIED_BOUND: &str =
    "certified bound: smallest indices at which the sufficient conditions hold, not a claim that the stable range is this large";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    #[default]
    Cyclic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseSpec {
    pub blocks: Vec<RepSpec>,
    #[serde(default)]
    pub schedule: Schedule,
}

/// A universe with its blocks built and their fixed dimensions tabulated.
#[derive(Clone, Debug)]
pub struct Universe {
    lattice: Arc<SubgroupLattice>,
    spec: UniverseSpec,
    reps: Vec<Representation>,
    fixed_dims: Vec<Vec<usize>>,
    isotropy: Vec<BTreeSet<usize>>,
    family: IsotropyFamily,
}

impl Universe {
    pub fn new(lattice: Arc<SubgroupLattice>, spec: UniverseSpec) -> Result<Self> {
        if spec.blocks.is_empty() {
            return Err(Error::Config("the universe needs at least one block".into()));
        }
        let mut reps = Vec::new();
        let mut fixed_dims = Vec::new();
        let mut isotropy = Vec::new();
        for (j, block) in spec.blocks.iter().enumerate() {
            let rep = build_rep(lattice.group(), block)?;
            if rep.dim() == 0 {
                return Err(Error::Validation(format!("block {j} is zero-dimensional")));
            }
            let dims = rep.fixed_dim_table(&lattice)?.dims;
            isotropy.push(isotropy_indices(&lattice, &dims));
            fixed_dims.push(dims);
            reps.push(rep);
        }
        let family = family_closure(&lattice, &isotropy);
        Ok(Universe { lattice, spec, reps, fixed_dims, isotropy, family })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn spec(&self) -> &UniverseSpec {
        &self.spec
    }

    pub fn block_count(&self) -> usize {
        self.reps.len()
    }

    /// Block index of `U_position`, positions starting at 1.
    pub fn block_at(&self, position: usize) -> usize {
        (position - 1) % self.block_count()
    }

    pub fn block(&self, j: usize) -> &Representation {
        &self.reps[j]
    }

    pub fn block_fixed_dims(&self, j: usize) -> &[usize] {
        &self.fixed_dims[j]
    }

    /// Lattice entries of `Iso(S(block j))`.
    pub fn block_isotropy(&self, j: usize) -> &BTreeSet<usize> {
        &self.isotropy[j]
    }

    /// `F(U_•)`: the closure of the blocks' isotropy sets.
    pub fn family(&self) -> &IsotropyFamily {
        &self.family
    }

    /// Whether some block contains the trivial representation, i.e. `V^G ≠ 0`.
    pub fn trivial_block_present(&self) -> bool {
        let g = self.lattice.whole_index();
        self.fixed_dims.iter().any(|d| d[g] > 0)
    }

    pub fn contains_regular(&self) -> bool {
        self.spec.blocks.iter().any(RepSpec::contains_regular)
    }

    /// Number of `i` in `first..=last` with `U_i` equal to block `j`.
    pub fn multiplicity(&self, j: usize, first: usize, last: usize) -> usize {
        let b = self.block_count();
        let upto = |x: usize| (x + b - 1 - j) / b;
        if last < first {
            return 0;
        }
        upto(last) - upto(first - 1)
    }

    /// `dim (U_first ⊕ … ⊕ U_last)^H` per lattice entry.
    pub fn fixed_dims(&self, first: usize, last: usize) -> Vec<usize> {
        let mut out = vec![0; self.lattice.len()];
        for j in 0..self.block_count() {
            let mult = self.multiplicity(j, first, last);
            for (o, d) in out.iter_mut().zip(&self.fixed_dims[j]) {
                *o += mult * d;
            }
        }
        out
    }

    /// `dim S(U_first ⊕ … ⊕ U_last)^H` per lattice entry.
    pub fn sphere_dims(&self, first: usize, last: usize) -> Vec<i64> {
        self.fixed_dims(first, last).into_iter().map(|d| d as i64 - 1).collect()
    }

    /// `Iso(S(U_first) ∗ … ∗ S(U_last))`, folded with [`join_isotropy`] and
    /// cross-checked against the isotropy of the direct sum.
    pub fn isotropy(&self, first: usize, last: usize) -> Result<BTreeSet<usize>> {
        let mut acc = BTreeSet::new();
        let mut unchanged = 0;
        for position in first..=last {
            if last < first || unchanged >= self.block_count() {
                break;
            }
            let next = join_isotropy(&self.lattice, &acc, &self.isotropy[self.block_at(position)]);
            if next == acc {
                unchanged += 1;
            } else {
                unchanged = 0;
                acc = next;
            }
        }
        let direct = isotropy_indices(&self.lattice, &self.fixed_dims(first, last));
        if direct != acc {
            return Err(Error::NumericConsistency(format!(
                "isotropy of U_{first}..U_{last} differs between the join fold and the direct sum"
            )));
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Profile {
    #[serde(rename = "far-in-U")]
    FarInU,
    #[serde(rename = "theorem1-stabilization")]
    Theorem1Stabilization,
    #[serde(rename = "theorem1-limit")]
    Theorem1Limit,
    #[serde(rename = "suspension")]
    Suspension,
    #[serde(rename = "prop61")]
    Prop61,
}

impl Profile {
    pub const ALL: [Profile; 5] = [
        Profile::FarInU,
        Profile::Theorem1Stabilization,
        Profile::Theorem1Limit,
        Profile::Suspension,
        Profile::Prop61,
    ];

    /// Profiles whose spheres all start at `U_1` and only `n` is searched.
    pub fn searches_n_only(self) -> bool {
        matches!(self, Profile::FarInU | Profile::Theorem1Limit | Profile::Suspension)
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::FarInU => "far-in-U",
            Profile::Theorem1Stabilization => "theorem1-stabilization",
            Profile::Theorem1Limit => "theorem1-limit",
            Profile::Suspension => "suspension",
            Profile::Prop61 => "prop61",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A sphere `S(U_first ⊕ … ⊕ U_last)` named in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereRange {
    pub name: String,
    pub first: usize,
    pub last: usize,
}

/// An equality of isotropy sets, listed by class number `i` of `(H_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyWitness {
    pub condition: String,
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
    pub holds: bool,
}

/// One inequality evaluated at one conjugacy class `(H_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityWitness {
    pub condition: String,
    pub class: usize,
    pub order: usize,
    pub lhs: i64,
    pub relation: Relation,
    pub rhs: i64,
    pub holds: bool,
}

impl fmt::Display for InequalityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at (H_{}) of order {}: {} {} {}",
            self.condition, self.class, self.order, self.lhs, self.relation, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityCertificate {
    pub profile: Profile,
    pub k: u32,
    pub m: usize,
    pub n: usize,
    pub spheres: Vec<SphereRange>,
    pub isotropy: Vec<IsotropyWitness>,
    pub inequalities: Vec<InequalityWitness>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StabilityCertificate {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Human-readable description of the first failing condition, if any.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(w) = self.isotropy.iter().find(|w| !w.holds) {
            return Some(format!("{}: expected classes {:?}, found {:?}", w.condition, w.expected, w.found));
        }
        self.inequalities.iter().find(|w| !w.holds).map(|w| w.to_string())
    }
}

struct Builder<'a> {
    lattice: &'a SubgroupLattice,
    isotropy: Vec<IsotropyWitness>,
    inequalities: Vec<InequalityWitness>,
}

impl<'a> Builder<'a> {
    fn new(lattice: &'a SubgroupLattice) -> Self {
        Builder { lattice, isotropy: Vec::new(), inequalities: Vec::new() }
    }

    fn labels(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        set.iter().map(|&i| self.lattice.class_index(i) + 1).collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn iso(&mut self, condition: &str, expected: &BTreeSet<usize>, found: &BTreeSet<usize>) {
        self.isotropy.push(IsotropyWitness {
            condition: condition.into(),
            expected: self.labels(expected),
            found: self.labels(found),
            holds: expected == found,
        });
    }

    fn ineq(&mut self, condition: &str, h: usize, lhs: i64, relation: Relation, rhs: i64) {
        self.inequalities.push(InequalityWitness {
            condition: condition.into(),
            class: self.lattice.class_index(h) + 1,
            order: self.lattice.subgroup(h).order(),
            lhs,
            relation,
            rhs,
            holds: relation.holds(lhs, rhs),
        });
    }

    fn finish(self, profile: Profile, k: u32, m: usize, n: usize, spheres: Vec<SphereRange>) -> StabilityCertificate {
        let ok = self.isotropy.iter().all(|w| w.holds) && self.inequalities.iter().all(|w| w.holds);
        StabilityCertificate {
            profile,
            k,
            m,
            n,
            spheres,
            isotropy: self.isotropy,
            inequalities: self.inequalities,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            label: None,
        }
    }
}

/// `dim X^H - dim ⋃_{K > H} X^K`, the union having the dimension of its
/// largest piece and the empty union dimension `-1`.
pub fn gap(lattice: &SubgroupLattice, sphere_dims: &[i64], h: usize) -> i64 {
    let above = lattice.minimal_overgroup_indices(h).iter().map(|&k| sphere_dims[k]).max().unwrap_or(-1);
    sphere_dims[h] - above
}

/// Connectivity of a sphere of dimension `d`, `-2` for the empty set.
pub fn sphere_connectivity(d: i64) -> i64 {
    if d >= 0 {
        d - 1
    } else {
        -2
    }
}

/// Lattice index of the representative of each class in `set`.
fn class_representatives(lattice: &SubgroupLattice, set: &BTreeSet<usize>) -> Vec<usize> {
    let classes: BTreeSet<usize> = set.iter().map(|&i| lattice.class_index(i)).collect();
    classes
        .into_iter()
        .map(|c| lattice.index_of(&lattice.classes()[c].representative).expect("own lattice"))
        .collect()
}

fn range(name: &str, first: usize, last: usize) -> SphereRange {
    SphereRange { name: name.into(), first, last }
}

fn k_i64(k: u32) -> i64 {
    i64::from(k)
}

/// The three conditions on `X = S(U_m ⊕ … ⊕ U_n)` that make it far in `U`.
pub fn check_far_in_u(universe: &Universe, m: usize, n: usize, k: u32) -> Result<StabilityCertificate> {
    check_profile(universe, Profile::FarInU, m, n, k)
}

/// Evaluates a profile at fixed indices.
///
/// For the profiles that only search `n`, `m` must be 1 except for
/// `far-in-U`, where `X = S(U_m ⊕ … ⊕ U_n)`.
pub fn check_profile(universe: &Universe, profile: Profile, m: usize, n: usize, k: u32) -> Result<StabilityCertificate> {
    if m == 0 || n < m {
        return Err(Error::Domain(format!("indices must satisfy 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if profile.searches_n_only() && profile != Profile::FarInU && m != 1 {
        return Err(Error::Domain(format!("profile {profile} uses spheres starting at U_1")));
    }
    let lattice = universe.lattice();
    let family = universe.family().member_indices();
    let reps = class_representatives(lattice, family);
    let kk = k_i64(k);
    let mut b = Builder::new(lattice);
    let spheres = match profile {
        Profile::FarInU => {
            let x = universe.sphere_dims(m, n);
            b.iso("(1) Iso(X) = F", family, &universe.isotropy(m, n)?);
            for &h in &reps {
                b.ineq("(2) dim X^H >= k", h, x[h], Relation::Ge, kk);
            }
            for &h in &reps {
                b.ineq("(3) dim X^H - dim U_{K>H} X^K >= k", h, gap(lattice, &x, h), Relation::Ge, kk);
            }
            vec![range("X", m, n)]
        }
        Profile::Theorem1Stabilization => {
            let x = universe.sphere_dims(1, m);
            let y = universe.sphere_dims(m + 1, n);
            b.iso("Iso(X) = F", family, &universe.isotropy(1, m)?);
            b.iso("Iso(Y') = F", family, &universe.isotropy(m + 1, n)?);
            for &h in &reps {
                b.ineq("dim X^H - dim U_{K>H} X^K >= k+1", h, gap(lattice, &x, h), Relation::Ge, kk + 1);
            }
            for &h in &reps {
                b.ineq("dim Y'^H >= k+1", h, y[h], Relation::Ge, kk + 1);
            }
            vec![range("X", 1, m), range("Y'", m + 1, n)]
        }
        Profile::Theorem1Limit => {
            let x = universe.sphere_dims(1, n);
            b.iso("Iso(X) = F", family, &universe.isotropy(1, n)?);
            for &h in &reps {
                b.ineq("dim X^H >= k+2", h, x[h], Relation::Ge, kk + 2);
            }
            for &h in &reps {
                b.ineq("dim X^H - dim U_{K>H} X^K >= k+2", h, gap(lattice, &x, h), Relation::Ge, kk + 2);
            }
            vec![range("X", 1, n)]
        }
        Profile::Suspension => {
            let x = universe.sphere_dims(1, n);
            b.iso("Iso(S(U)) = F", family, &universe.isotropy(1, n)?);
            for &h in &reps {
                b.ineq("dim S(U)^H >= k+2", h, x[h], Relation::Ge, kk + 2);
            }
            vec![range("S(U)", 1, n)]
        }
        Profile::Prop61 => {
            let dims = Prop61Dims {
                x: universe.sphere_dims(1, m),
                y: universe.sphere_dims(m + 1, n),
                z: universe.sphere_dims(n + 1, n + 1),
                xy: universe.sphere_dims(1, n),
                xyz: universe.sphere_dims(1, n + 1),
                iso_x: universe.isotropy(1, m)?,
                iso_y: universe.isotropy(m + 1, n)?,
                iso_xyz: universe.isotropy(1, n + 1)?,
            };
            prop61_witnesses(&mut b, &dims, kk);
            vec![range("X", 1, m), range("Y", m + 1, n), range("Z", n + 1, n + 1)]
        }
    };
    Ok(b.finish(profile, k, m, n, spheres))
}

struct Prop61Dims {
    x: Vec<i64>,
    y: Vec<i64>,
    z: Vec<i64>,
    xy: Vec<i64>,
    xyz: Vec<i64>,
    iso_x: BTreeSet<usize>,
    iso_y: BTreeSet<usize>,
    iso_xyz: BTreeSet<usize>,
}

fn prop61_witnesses(b: &mut Builder<'_>, d: &Prop61Dims, k: i64) {
    let lattice = b.lattice;
    b.iso("(1) Iso(X) = Iso(Y)", &d.iso_x, &d.iso_y);
    b.iso("(1) Iso(X) = Iso(XYZ)", &d.iso_x, &d.iso_xyz);
    for h in class_representatives(lattice, &d.iso_x) {
        let (dx, dy, dz) = (d.x[h], d.y[h], d.z[h]);
        let dyz = dy + dz + 1;
        b.ineq("(2) dim Y^H > k", h, dy, Relation::Gt, k);
        b.ineq("(3) dim X^H - dim U_{K>H} X^K > k", h, gap(lattice, &d.x, h), Relation::Gt, k);
        b.ineq("(4) conn (XY)^H >= dim X^H + dim Y^H", h, sphere_connectivity(d.xy[h]), Relation::Ge, dx + dy);
        b.ineq("(4) conn (XYZ)^H >= dim X^H + dim (YZ)^H", h, sphere_connectivity(d.xyz[h]), Relation::Ge, dx + dyz);
        b.ineq("(5) dim X^H + dim Y^H >= dim X^H + k + 1", h, dx + dy, Relation::Ge, dx + k + 1);
    }
}

/// The hypotheses of the stabilization proposition for the linear spheres
/// of explicit representations `X`, `Y`, `Z`.
pub fn check_prop61_hypotheses(
    lattice: &SubgroupLattice,
    x: &Representation,
    y: &Representation,
    z: &Representation,
    k: u32,
) -> Result<StabilityCertificate> {
    let tables = [x, y, z]
        .iter()
        .map(|r| {
            if !Arc::ptr_eq(r.group(), lattice.group()) {
                return Err(Error::ParentMismatch);
            }
            r.fixed_dim_table(lattice).map(|t| t.dims)
        })
        .collect::<Result<Vec<_>>>()?;
    let sphere = |t: &[usize]| t.iter().map(|&d| d as i64 - 1).collect::<Vec<_>>();
    let sum = |parts: &[&Vec<usize>]| {
        (0..lattice.len()).map(|i| parts.iter().map(|p| p[i]).sum::<usize>()).collect::<Vec<_>>()
    };
    let iso: Vec<BTreeSet<usize>> = tables.iter().map(|t| isotropy_indices(lattice, t)).collect();
    let iso_xyz = join_isotropy(lattice, &join_isotropy(lattice, &iso[0], &iso[1]), &iso[2]);
    let xy = sum(&[&tables[0], &tables[1]]);
    let xyz = sum(&[&tables[0], &tables[1], &tables[2]]);
    if isotropy_indices(lattice, &xyz) != iso_xyz {
        return Err(Error::NumericConsistency("isotropy of X*Y*Z differs from that of the direct sum".into()));
    }
    let dims = Prop61Dims {
        x: sphere(&tables[0]),
        y: sphere(&tables[1]),
        z: sphere(&tables[2]),
        xy: sphere(&xy),
        xyz: sphere(&xyz),
        iso_x: iso[0].clone(),
        iso_y: iso[1].clone(),
        iso_xyz,
    };
    let mut b = Builder::new(lattice);
    prop61_witnesses(&mut b, &dims, k_i64(k));
    let spheres = vec![range("X", 0, 0), range("Y", 0, 0), range("Z", 0, 0)];
    Ok(b.finish(Profile::Prop61, k, 0, 0, spheres))
}

/// Smallest indices, scanning `m` and then `n`, at which the profile holds.
///
/// `n` never exceeds `horizon`. For `far-in-U`, `theorem1-limit` and
/// `suspension` only `n` is searched and `m = 1`.
pub fn stable_range(universe: &Universe, k: u32, profile: Profile, horizon: usize) -> Result<StabilityCertificate> {
    let mut last_failure = None;
    let m_max = if profile.searches_n_only() { 1 } else { horizon };
    for m in 1..=m_max {
        if !profile.searches_n_only() && !x_conditions_hold(universe, profile, m, k)? {
            last_failure = Some(format!("no n works for m = {m}: X alone fails"));
            continue;
        }
        for n in m..=horizon {
            let cert = check_profile(universe, profile, m, n, k)?;
            if cert.passes() {
                return Ok(StabilityCertificate { label: Some(CERTIFIED_BOUND.into()), ..cert });
            }
            last_failure = Some(format!("(m, n) = ({m}, {n}): {}", cert.first_failure().unwrap_or_default()));
        }
    }
    Err(Error::SearchLimit {
        horizon,
        detail: format!("profile {profile}, k = {k}, {}", last_failure.unwrap_or_else(|| "nothing evaluated".into())),
    })
}

/// Conditions involving `X = S(U_{≤m})` alone, which no choice of `n` can repair.
fn x_conditions_hold(universe: &Universe, profile: Profile, m: usize, k: u32) -> Result<bool> {
    let lattice = universe.lattice();
    let x = universe.sphere_dims(1, m);
    let iso_x = universe.isotropy(1, m)?;
    let kk = k_i64(k);
    Ok(match profile {
        Profile::Theorem1Stabilization => {
            iso_x == *universe.family().member_indices()
                && class_representatives(lattice, &iso_x).iter().all(|&h| gap(lattice, &x, h) > kk)
        }
        Profile::Prop61 => class_representatives(lattice, &iso_x).iter().all(|&h| gap(lattice, &x, h) > kk),
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    fn universe(group: &str, blocks: Vec<RepSpec>) -> Universe {
        let lattice = Arc::new(SubgroupLattice::new(Arc::new(named::by_name(group).unwrap())));
        Universe::new(lattice, UniverseSpec { blocks, schedule: Schedule::Cyclic }).unwrap()
    }

    #[test]
    fn cyclic_multiplicities() {
        let u = universe("C2", vec![RepSpec::Sign, RepSpec::Trivial, RepSpec::Sign]);
        assert_eq!(u.multiplicity(0, 1, 7), 3);
        assert_eq!(u.multiplicity(1, 1, 7), 2);
        assert_eq!(u.multiplicity(2, 1, 7), 2);
        assert_eq!(u.multiplicity(1, 3, 4), 0);
        assert_eq!(u.multiplicity(0, 5, 4), 0);
        assert_eq!(u.fixed_dims(1, 3), vec![3, 1]);
        assert!(u.trivial_block_present());
    }

    #[test]
    fn far_in_u_examples() {
        let u = universe("C2", vec![RepSpec::Sign]);
        assert!(check_far_in_u(&u, 1, 2, 0).unwrap().passes());
        let fail = check_far_in_u(&u, 1, 1, 1).unwrap();
        assert!(!fail.passes());
        assert!(fail.first_failure().unwrap().starts_with("(2)"));

        let s3 = universe("S3", vec![RepSpec::Standard]);
        assert!(check_far_in_u(&s3, 1, 1, 0).unwrap().passes());
    }

    #[test]
    fn stable_range_examples() {
        let u = universe("C2", vec![RepSpec::Sign]);
        let c = stable_range(&u, 0, Profile::Theorem1Stabilization, DEFAULT_HORIZON).unwrap();
        assert_eq!((c.m, c.n), (1, 3));
        assert!(c.label.as_deref().unwrap().starts_with("certified bound"));
        let c = stable_range(&u, 0, Profile::Theorem1Limit, DEFAULT_HORIZON).unwrap();
        assert_eq!(c.n, 3);

        let s3 = universe("S3", vec![RepSpec::Standard]);
        let c = stable_range(&s3, 0, Profile::Theorem1Stabilization, DEFAULT_HORIZON).unwrap();
        assert_eq!((c.m, c.n), (1, 3));
    }

    #[test]
    fn horizon_exhaustion_is_reported() {
        let u = universe("C2", vec![RepSpec::Sign]);
        let err = stable_range(&u, 10, Profile::Suspension, 5).unwrap_err();
        assert!(matches!(err, Error::SearchLimit { horizon: 5, .. }));
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("dim S(U)^H >= k+2"), "{err}");
    }

    #[test]
    fn prop61_examples() {
        let lattice = Arc::new(SubgroupLattice::new(Arc::new(named::symmetric(3).unwrap())));
        let g = lattice.group();
        let v = build_rep(g, &RepSpec::Standard).unwrap();
        let vv = v.direct_sum(&v).unwrap();
        assert!(check_prop61_hypotheses(&lattice, &v, &vv, &v, 0).unwrap().passes());
        let fail = check_prop61_hypotheses(&lattice, &v, &v, &v, 0).unwrap();
        assert!(!fail.passes());
        let first = fail.inequalities.iter().find(|w| !w.holds).unwrap();
        assert!(first.condition.starts_with("(2)"));
        assert_eq!(first.order, 2);
        // dim Y^G = 0 for the regular sphere, so (2) and (5) fail at G and nowhere else
        let r = build_rep(g, &RepSpec::Regular).unwrap();
        let cert = check_prop61_hypotheses(&lattice, &r, &r, &r, 0).unwrap();
        let failed: Vec<_> = cert.inequalities.iter().filter(|w| !w.holds).collect();
        assert_eq!(failed.len(), 2);
        assert!(failed[0].condition.starts_with("(2)") && failed[1].condition.starts_with("(5)"));
        assert!(failed.iter().all(|w| w.order == 6));
        let rr = r.direct_sum(&r).unwrap();
        assert!(check_prop61_hypotheses(&lattice, &r, &rr, &r, 0).unwrap().passes());
    }

    #[test]
    fn certificates_serialize() {
        let u = universe("S3", vec![RepSpec::Standard]);
        let c = stable_range(&u, 1, Profile::Prop61, DEFAULT_HORIZON).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"profile\":\"prop61\""));
        assert!(json.contains("\">=\""));
        let back: StabilityCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn empty_and_degenerate_universes_are_rejected() {
        let lattice = Arc::new(SubgroupLattice::new(Arc::new(named::cyclic(2).unwrap())));
        let empty = UniverseSpec { blocks: vec![], schedule: Schedule::Cyclic };
        assert!(matches!(Universe::new(lattice.clone(), empty), Err(Error::Config(_))));
        let zero = UniverseSpec { blocks: vec![RepSpec::DirectSum { parts: vec![] }], schedule: Schedule::Cyclic };
        assert!(matches!(Universe::new(lattice, zero), Err(Error::Validation(_))));
    }
}
