//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use equistab::config::JobConfig;
use equistab::family::{filtration_dims, join_isotropy_of_subgroups};
use equistab::group::{abelianization, all_subgroups, named, FgAbelianGroup, FiniteGroup, PermGroup, SubgroupLattice};
use equistab::limit::CheckStatus;
use equistab::rep::{build_rep, isotropy_of_sphere, RepSpec};
use equistab::report::{run, Report};
use equistab::stable::{check_profile, stable_range, Profile, Schedule, Universe, UniverseSpec, DEFAULT_HORIZON};
use equistab::verify::{formula_suites, Mutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn config(group: &str, blocks: &str, k: u32) -> JobConfig {
    JobConfig::from_json(&format!(
        r#"{{"schema_version":1,"group":{{"kind":"named","name":"{group}"}},"universe":{{"blocks":{blocks}}},"k":{k},
            "profiles":["far-in-U","theorem1-stabilization","theorem1-limit","suspension","prop61"]}}"#
    ))
    .expect("valid config")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn report(c: &JobConfig) -> Result<Report, String> {
    run(c).map_err(|e| e.to_string())
}

fn certificate(r: &Report, profile: Profile) -> Result<(usize, usize), String> {
    r.certificate(profile).map(|c| (c.m, c.n)).ok_or_else(|| format!("no {profile} certificate"))
}

fn c2_sign() -> Outcome {
    let start = Instant::now();
    let r = report(&config("C2", r#"[{"kind":"sign"}]"#, 0))?;
    let (s, p) = (&r.splitting, &r.splitting.pointed_variant);
    let trivial_class = r.lattice.classes.iter().find(|c| c.order == 1).map(|c| c.label);
    ensure(r.family.classes == vec![trivial_class.unwrap_or(0)], || format!("family {:?}", r.family.classes))?;
    ensure(s.i0.total == FgAbelianGroup::free(1), || format!("pi_0 = {}", s.i0.total))?;
    ensure(s.i1.total.invariant_factors() == [2, 2] && s.i1.total.free_rank() == 0, || format!("pi_1 = {}", s.i1.total))?;
    ensure(p.i0.total == FgAbelianGroup::free(2), || format!("pointed pi_0 = {}", p.i0.total))?;
    let mn = certificate(&r, Profile::Theorem1Stabilization)?;
    ensure(mn == (1, 3), || format!("certificate {mn:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("F = {{(e)}}, pi_0 = {}, pi_1 = {}, pointed pi_0 = {}, (m, n) = {mn:?}", s.i0.total, s.i1.total, p.i0.total))
}

fn s3_standard() -> Outcome {
    let start = Instant::now();
    let r = report(&config("S3", r#"[{"kind":"standard"}]"#, 0))?;
    let orders: Vec<usize> = r.family.classes.iter().map(|&c| r.lattice.classes[c - 1].order).collect();
    ensure(orders == vec![2, 1], || format!("family class orders {orders:?}"))?;
    let s = &r.splitting;
    ensure(s.i0.total == FgAbelianGroup::free(2), || format!("pi_0 = {}", s.i0.total))?;
    ensure(s.i1.total == FgAbelianGroup::from_cyclic_orders(0, &[2, 2, 2]), || format!("pi_1 = {}", s.i1.total))?;
    let mn = certificate(&r, Profile::Theorem1Stabilization)?;
    ensure(mn == (1, 3), || format!("certificate {mn:?}"))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("F = {{(e), (C2)}}, pi_0 = {}, pi_1 = {}, (m, n) = {mn:?}", s.i0.total, s.i1.total))
}

fn s3_regular() -> Outcome {
    let start = Instant::now();
    let r = report(&config("S3", r#"[{"kind":"regular"}]"#, 0))?;
    ensure(r.family.classes == vec![1, 2, 3, 4], || format!("family {:?}", r.family.classes))?;
    ensure(r.splitting.i0.total == FgAbelianGroup::free(4), || format!("pi_0 = {}", r.splitting.i0.total))?;
    let b = &r.cross_checks.burnside;
    ensure(b.status == CheckStatus::Pass, || format!("Burnside check {:?}: {}", b.status, b.detail))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("4 classes, pi_0 = {}, Burnside rank {}", r.splitting.i0.total, b.burnside_rank))
}

const CORPUS_GROUPS: [&str; 5] = ["C2", "C4", "S3", "D4", "Q8"];

fn corpus_blocks(g: &PermGroup) -> Vec<RepSpec> {
    vec![RepSpec::Sign, RepSpec::Standard, RepSpec::Regular, RepSpec::Permutation { points: g.degree() }]
}

fn join_isotropy_oracle() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for name in CORPUS_GROUPS {
        let g = Arc::new(named::by_name(name).map_err(|e| e.to_string())?);
        let lattice = SubgroupLattice::new(g.clone());
        let specs = corpus_blocks(&g);
        let reps = specs.iter().map(|s| build_rep(&g, s)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                pairs += 1;
                let ia = isotropy_of_sphere(a, &lattice).map_err(|e| e.to_string())?;
                let ib = isotropy_of_sphere(b, &lattice).map_err(|e| e.to_string())?;
                let joined = join_isotropy_of_subgroups(&lattice, &ia, &ib).map_err(|e| e.to_string())?;
                let sum = a.direct_sum(b).map_err(|e| e.to_string())?;
                let direct = isotropy_of_sphere(&sum, &lattice).map_err(|e| e.to_string())?;
                ensure(joined == direct, || format!("{name}: {:?} * {:?} disagrees", specs[i], specs[j]))?;
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{pairs} ordered block pairs over {} groups", CORPUS_GROUPS.len()))
}

fn filtration_identities() -> Outcome {
    let start = Instant::now();
    let mut spheres = 0;
    for name in CORPUS_GROUPS {
        let g = Arc::new(named::by_name(name).map_err(|e| e.to_string())?);
        let lattice = Arc::new(SubgroupLattice::new(g.clone()));
        let universe = Universe::new(lattice.clone(), UniverseSpec { blocks: corpus_blocks(&g), schedule: Schedule::Cyclic })
            .map_err(|e| e.to_string())?;
        let b = universe.block_count();
        for first in 1..=b {
            for last in first..=first + b {
                spheres += 1;
                let table = filtration_dims(&lattice, &universe.sphere_dims(first, last)).map_err(|e| e.to_string())?;
                let bad = table.check(&lattice);
                ensure(bad.is_empty(), || format!("{name}, U_{first}..U_{last}: {:?}", bad[0]))?;
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{spheres} spheres, every filtration step"))
}

fn formula_rows(suites: &[&str], limit: Duration) -> Outcome {
    let start = Instant::now();
    let table = formula_suites(0x5EED, Mutation::None);
    let rows: Vec<_> = table.rows.iter().filter(|r| suites.contains(&r.suite.as_str())).collect();
    ensure(!rows.is_empty(), || "no rows".into())?;
    if let Some(bad) = rows.iter().find(|r| !r.pass) {
        return Err(format!("{}: deviation {:e} > {:e}", bad.identity, bad.max_deviation, bad.tolerance));
    }
    within(start, limit)?;
    let worst = rows.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
    Ok(format!("{} identities, worst deviation {worst:.1e}", rows.len()))
}

fn certificate_monotonicity() -> Outcome {
    let start = Instant::now();
    let universes: [(&str, Vec<RepSpec>); 5] = [
        ("C2", vec![RepSpec::Sign]),
        ("S3", vec![RepSpec::Standard]),
        ("S3", vec![RepSpec::Regular]),
        ("C4", vec![RepSpec::Rotation { n: 4, j: 1 }, RepSpec::Sign]),
        ("D4", vec![RepSpec::Permutation { points: 4 }, RepSpec::Trivial]),
    ];
    let mut checked = 0;
    for (name, blocks) in universes {
        let g = Arc::new(named::by_name(name).map_err(|e| e.to_string())?);
        let universe = Universe::new(Arc::new(SubgroupLattice::new(g)), UniverseSpec { blocks, schedule: Schedule::Cyclic })
            .map_err(|e| e.to_string())?;
        for profile in Profile::ALL {
            for k in 0..3u32 {
                let c = stable_range(&universe, k, profile, DEFAULT_HORIZON).map_err(|e| e.to_string())?;
                let passes = |m: usize, n: usize, k: u32| {
                    check_profile(&universe, profile, m, n, k).map(|c| c.passes()).map_err(|e| e.to_string())
                };
                let at = format!("{name} {profile} k = {k} at ({}, {})", c.m, c.n);
                ensure(passes(c.m, c.n, k)?, || format!("{at}: does not pass"))?;
                ensure(passes(c.m, c.n + 1, k)? && passes(c.m, c.n + 2, k)?, || format!("{at}: fails at n+1 or n+2"))?;
                if c.n > c.m {
                    ensure(!passes(c.m, c.n - 1, k)?, || format!("{at}: passes at n-1"))?;
                }
                if k > 0 {
                    ensure(passes(c.m, c.n, k - 1)?, || format!("{at}: fails at k-1"))?;
                }
                for m in 1..c.m {
                    for n in m..=c.n + 2 {
                        ensure(!passes(m, n, k)?, || format!("{at}: smaller m = {m} passes at n = {n}"))?;
                    }
                }
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{checked} certificates"))
}

/// Every subgroup, by closing every subset of at most `log2 |G|` elements under multiplication.
/// Each new generator outside the current closure at least doubles it, so that many suffice.
fn subset_closure_oracle(g: &PermGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let rank = n.ilog2() as usize;
    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![], 0)];
    while let Some((subset, next)) = stack.pop() {
        let mut members: BTreeSet<usize> = subset.iter().copied().collect();
        members.insert(0);
        loop {
            let products: Vec<usize> =
                members.iter().flat_map(|&a| members.iter().map(move |&b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
            let before = members.len();
            members.extend(products);
            if members.len() == before {
                break;
            }
        }
        let closed: Vec<usize> = members.iter().copied().collect();
        out.insert(closed);
        if subset.len() < rank {
            for x in (next..n).filter(|x| !members.contains(x)) {
                let mut s = subset.clone();
                s.push(x);
                stack.push((s, x + 1));
            }
        }
    }
    out
}

fn group_oracles() -> Outcome {
    let start = Instant::now();
    let corpus = [
        "C1", "C2", "C3", "C4", "C6", "C8", "C12", "V4", "S3", "D4", "D5", "D6", "Q8", "A4", "C2xC2xC2", "C2xC4",
        "C2xS3", "C3xC3", "S4",
    ];
    for name in corpus {
        let g = Arc::new(named::by_name(name).map_err(|e| e.to_string())?);
        ensure(g.order() <= 24, || format!("{name} has order {}", g.order()))?;
        let ours: BTreeSet<Vec<usize>> = all_subgroups(&g).iter().map(|h| h.elements().collect()).collect();
        let oracle = subset_closure_oracle(&g);
        ensure(ours == oracle, || format!("{name}: {} subgroups, oracle finds {}", ours.len(), oracle.len()))?;
    }
    let known: [(&str, &[u64]); 3] = [("S3", &[2]), ("Q8", &[2, 2]), ("A4", &[3])];
    for (name, factors) in known {
        let g = named::by_name(name).map_err(|e| e.to_string())?;
        let ab = abelianization(&g);
        ensure(ab.invariant_factors() == factors && ab.free_rank() == 0, || format!("{name}_ab = {ab}"))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} groups match the subset-closure oracle; S3, Q8, A4 abelianizations", corpus.len()))
}

fn determinism() -> Outcome {
    let configs = [
        config("C2", r#"[{"kind":"sign"}]"#, 0),
        config("S3", r#"[{"kind":"standard"},{"kind":"regular"}]"#, 1),
        config("D4", r#"[{"kind":"permutation","points":4},{"kind":"sign"}]"#, 2),
    ];
    for c in &configs {
        let a = report(c)?.to_json().map_err(|e| e.to_string())?;
        let b = report(c)?.to_json().map_err(|e| e.to_string())?;
        ensure(a == b, || "reports differ".into())?;
        let parsed = Report::from_json(&a).map_err(|e| e.to_string())?;
        ensure(parsed.to_json().map_err(|e| e.to_string())? == a, || "round trip changes the report".into())?;
    }
    Ok(format!("{} configurations byte-identical across runs", configs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("C2 sign-only universe", c2_sign),
        ("Sym(3) standard universe", s3_standard),
        ("Sym(3) regular universe", s3_regular),
        ("join isotropy oracle", join_isotropy_oracle),
        ("filtration identities", filtration_identities),
        ("simplex and join formula suite", || formula_rows(&["simplex", "join"], Duration::from_secs(10))),
        ("h-homotopy endpoints", || formula_rows(&["suspension"], Duration::from_secs(5))),
        ("certificate monotonicity and minimality", certificate_monotonicity),
        ("group engine oracles", group_oracles),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
