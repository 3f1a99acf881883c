//! Seeded pointwise verification of the coordinate formulas, plus
//! configuration-dependent property checks.
//!
//! Algebraic identities are held to `1e-9`; identities that pass through
//! sampled maps to `1e-6`. Exact checks report the number of failing cases
//! as their deviation, with tolerance `0`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::JobConfig;
use crate::error::{Error, Result};
use crate::family::filtration_dims;
use crate::group::SubgroupLattice;
use crate::join::maps::{alpha_with, beta, inclusion, join_map, join_map_on_triple, psi_map, ParamMap, SampledMap};
use crate::join::point::{assoc_left, assoc_right, split_left, split_right, JoinPoint, LeftNested, RightNested};
use crate::join::simplex::{
    alpha_tilde_raw, beta_tilde_raw, max_diff, s_prime_raw, t_prime_raw, theta_h, theta_k, theta_tilde,
    ORIGIN_EXCLUSION,
};
use crate::join::suspension::{eta, h, tau, sigma, test_maps, CompactifiedPoint, Norm, SelfMap};
use crate::rep::{build_rep, isotropy_indices};
use crate::report::{run, CertificateOutcome};
use crate::stable::{check_profile, Universe};

pub const ALGEBRAIC_TOL: f64 = 1e-9;
pub const SAMPLED_TOL: f64 = 1e-6;
/// Samples closer than this to a branch seam are re-drawn.
pub const SEAM_MARGIN: f64 = 1e-9;

const SIMPLEX_SAMPLES: usize = 200;
const THETA_SAMPLES: usize = 100;
const GRID: usize = 20;
const DIAGRAM_SAMPLES: usize = 200;
const H_SAMPLES: usize = 100;

/// Deliberate corruption of a formula, used to confirm the checks can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// `α̃(s, t) = (-st, s(1-t), 1-s)`.
    AlphaTildeSignFlip,
}

impl Mutation {
    fn alpha_tilde(self) -> fn(f64, f64) -> [f64; 3] {
        match self {
            Mutation::None => alpha_tilde_raw,
            Mutation::AlphaTildeSignFlip => |s, t| {
                let [a, b, c] = alpha_tilde_raw(s, t);
                [-a, b, c]
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRow {
    pub suite: String,
    pub identity: String,
    pub samples: usize,
    /// `null` in JSON when infinite.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationTable {
    pub seed: u64,
    pub rows: Vec<VerificationRow>,
}

impl VerificationTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn row(&self, identity: &str) -> Option<&VerificationRow> {
        self.rows.iter().find(|r| r.identity == identity)
    }
}

impl fmt::Display for VerificationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for r in &self.rows {
            writeln!(
                f,
                "{:4}  {:<12} {:<58} n={:<6} max dev {:<10.3e} tol {:.0e}",
                if r.pass { "PASS" } else { "FAIL" },
                r.suite,
                r.identity,
                r.samples,
                r.max_deviation,
                r.tolerance
            )?;
        }
        Ok(())
    }
}

struct Suite {
    name: &'static str,
    rows: Vec<VerificationRow>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, rows: Vec::new() }
    }

    fn push(&mut self, identity: impl Into<String>, samples: usize, max_deviation: f64, tolerance: f64) {
        self.rows.push(VerificationRow {
            suite: self.name.into(),
            identity: identity.into(),
            samples,
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        });
    }

    fn exact(&mut self, identity: impl Into<String>, samples: usize, failures: usize) {
        self.push(identity, samples, failures as f64, 0.0);
    }
}

/// Each suite draws from its own stream so suites are independent of each other's sample counts.
fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Deviation of a fallible comparison; errors count as infinite.
fn dev(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

fn unit_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn vector_of_norm(rng: &mut ChaCha8Rng, d: usize, r: f64) -> Vec<f64> {
    unit_vector(rng, d).into_iter().map(|x| r * x).collect()
}

/// A weight in `[0, 1]`, hitting both endpoints exactly now and then.
fn weight(rng: &mut ChaCha8Rng, i: usize) -> f64 {
    match i % 10 {
        3 => 0.0,
        7 => 1.0,
        _ => rng.gen(),
    }
}

fn grid(i: usize) -> f64 {
    i as f64 / (GRID - 1) as f64
}

/// The join and simplex formula suites and the suspension suites.
pub fn formula_suites(seed: u64, mutation: Mutation) -> VerificationTable {
    let mut rows = Vec::new();
    rows.extend(simplex_suite(seed, mutation).rows);
    rows.extend(join_suite(seed, mutation).rows);
    rows.extend(suspension_suite(seed).rows);
    VerificationTable { seed, rows }
}

fn simplex_suite(seed: u64, mutation: Mutation) -> Suite {
    let mut suite = Suite::new("simplex");
    let alpha_tilde = mutation.alpha_tilde();
    let mut r = rng(seed, 1);

    let mut worst: f64 = 0.0;
    let mut range_failures = 0;
    for _ in 0..SIMPLEX_SAMPLES {
        let (s, t): (f64, f64) = (r.gen(), r.gen());
        let (sp, tp) = (s_prime_raw(s, t), t_prime_raw(s, t));
        if !(0.0..=1.0).contains(&sp) || !(0.0..=1.0).contains(&tp) {
            range_failures += 1;
        }
        worst = worst.max(max_diff(&beta_tilde_raw(s, t), &alpha_tilde(sp, tp)));
    }
    suite.push("beta~ = alpha~ o (s', t')", SIMPLEX_SAMPLES, worst, ALGEBRAIC_TOL);
    suite.exact("s', t' take values in [0, 1]", SIMPLEX_SAMPLES, range_failures);

    let mut worst: f64 = 0.0;
    for i in 0..GRID {
        let x = grid(i);
        worst = worst
            .max((s_prime_raw(0.0, x) - x).abs())
            .max(t_prime_raw(x, 0.0).abs())
            .max((t_prime_raw(x, 1.0) - 1.0).abs());
    }
    worst = worst.max(t_prime_raw(0.0, 0.0).abs());
    suite.push("s'(0,t) = t, t'(s,0) = 0, t'(s,1) = 1, t'(0,0) = 0", 3 * GRID + 1, worst, ALGEBRAIC_TOL);

    let (mut w0, mut w1, mut n) = (0.0f64, 0.0f64, 0);
    while n < THETA_SAMPLES {
        let (s, t): (f64, f64) = (r.gen(), r.gen());
        if s.hypot(t) < ORIGIN_EXCLUSION {
            continue;
        }
        n += 1;
        w0 = w0.max(dev(theta_tilde(0.0, s, t).map(|p| max_diff(&p.0, &alpha_tilde(s, t)))));
        w1 = w1.max(dev(theta_tilde(1.0, s, t).map(|p| max_diff(&p.0, &beta_tilde_raw(s, t)))));
    }
    suite.push("theta~_0 = alpha~", THETA_SAMPLES, w0, ALGEBRAIC_TOL);
    suite.push("theta~_1 = beta~", THETA_SAMPLES, w1, ALGEBRAIC_TOL);

    // The four edge containments, on the 20^3 grid restricted to each edge.
    let faces: [(&str, usize); 4] = [
        ("theta~_p({0} x I) in face 1", 1),
        ("theta~_p({1} x I) in face 2", 2),
        ("theta~_p(I x {0}) in face 0", 0),
        ("theta~_p(I x {1}) in face 1", 1),
    ];
    let mut worst = [0.0f64; 4];
    let mut counts = [0usize; 4];
    let mut seam: f64 = 0.0;
    let mut seam_count = 0;
    for ip in 0..GRID {
        for is in 0..GRID {
            for it in 0..GRID {
                let (p, s, t) = (grid(ip), grid(is), grid(it));
                if s.hypot(t) < ORIGIN_EXCLUSION {
                    continue;
                }
                seam_count += 1;
                seam = seam.max(dev(theta_h(1.0, s, t).and_then(|a| theta_k(0.0, s, t).map(|b| a.distance(&b)))));
                let edges = [is == 0, is == GRID - 1, it == 0, it == GRID - 1];
                for (e, &on_edge) in edges.iter().enumerate() {
                    if on_edge {
                        counts[e] += 1;
                        let face = faces[e].1;
                        worst[e] = worst[e].max(dev(theta_tilde(p, s, t).map(|q| q.0[face].abs())));
                    }
                }
            }
        }
    }
    for (e, (name, _)) in faces.iter().enumerate() {
        suite.push(*name, counts[e], worst[e], ALGEBRAIC_TOL);
    }
    suite.push("H(1, s, t) = K(0, s, t)", seam_count, seam, ALGEBRAIC_TOL);
    suite
}

const DA: usize = 2;
const DY: usize = 2;
const DZ: usize = 1;
const DW: usize = 3;

fn random_pair(r: &mut ChaCha8Rng, i: usize) -> JoinPoint {
    JoinPoint::pair(weight(r, i), unit_vector(r, DY), unit_vector(r, DZ)).expect("valid weights")
}

/// `f̂((a, t), y) = f([t a, (1-t) y])`, the pullback of `f: AY → W` to `(A × I) × Y`.
fn pulled_back(f: &SampledMap) -> ParamMap {
    let f = f.clone();
    ParamMap::new(format!("{} o pi", f.name()), DA + 1, DY, f.target_dim(), move |at, y| {
        let (a, t) = (&at[..DA], at[DA]);
        let p = JoinPoint::new(vec![(t, Some(a.to_vec())), (1.0 - t, Some(y.to_vec()))]).expect("valid weights");
        f.eval(&p.embed(&[DA, DY]).expect("dimensions match")).expect("dimensions match")
    })
}

fn join_suite(seed: u64, mutation: Mutation) -> Suite {
    let mut suite = Suite::new("join");
    let alpha_tilde = mutation.alpha_tilde();
    let mut r = rng(seed, 2);
    let ay_maps = SampledMap::library(DA + DY + 2, DW);
    let y_maps = SampledMap::library(DY, DW);
    let a_maps = SampledMap::library(DA, DW);

    let (mut full, mut a0, mut a1, mut b1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..DIAGRAM_SAMPLES {
        let a = unit_vector(&mut r, DA);
        let yz = random_pair(&mut r, i);
        let t = weight(&mut r, i / 10 + i);

        let f = &ay_maps[i % ay_maps.len()];
        let lhs = alpha_with(alpha_tilde, &a, &yz, t).and_then(|p| join_map_on_triple(f, &p, [DA, DY]));
        let mut at = a.clone();
        at.push(t);
        let rhs = psi_map(&pulled_back(f), &at, &yz);
        full = full.max(dev(lhs.and_then(|l| rhs.map(|r| l.distance(&r)))));

        let g = &y_maps[i % y_maps.len()];
        let lhs = alpha_with(alpha_tilde, &a, &yz, 0.0).and_then(|p| p.drop_factor(0)).and_then(|p| join_map(g, &p));
        let rhs = psi_map(&ParamMap::ignoring_param(g, DA), &a, &yz);
        a0 = a0.max(dev(lhs.and_then(|l| rhs.map(|r| l.distance(&r)))));

        let hmap = &a_maps[i % a_maps.len()];
        let lhs = alpha_with(alpha_tilde, &a, &yz, 1.0).and_then(|p| p.drop_factor(1)).and_then(|p| join_map(hmap, &p));
        let rhs = psi_map(&ParamMap::ignoring_point(hmap, DY), &a, &yz);
        a1 = a1.max(dev(lhs.and_then(|l| rhs.map(|r| l.distance(&r)))));

        let lhs = beta(&a, &yz, 1.0)
            .and_then(|p| p.drop_factor(2))
            .and_then(|p| p.drop_factor(1).map(|_| p))
            .and_then(|p| join_map(hmap, &p));
        let rhs = hmap.eval(&a).and_then(inclusion);
        b1 = b1.max(dev(lhs.and_then(|l| rhs.map(|r| l.distance(&r)))));
    }
    suite.push("alpha^* J_Z(f) = psi(f o pi) on A x I x YZ", DIAGRAM_SAMPLES, full, SAMPLED_TOL);
    suite.push("(alpha|t=0)^* J_Z(f) = psi(pi^* f)", DIAGRAM_SAMPLES, a0, SAMPLED_TOL);
    suite.push("(alpha|t=1)^* J_Z(h) = psi(pi^* h)", DIAGRAM_SAMPLES, a1, SAMPLED_TOL);
    suite.push("(beta|t=1)^* J_Z(h) = pi^* incl_* h", DIAGRAM_SAMPLES, b1, SAMPLED_TOL);

    let (mut incl, mut id, mut point, mut restrict) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..DIAGRAM_SAMPLES {
        let g = &y_maps[i % y_maps.len()];
        let y = unit_vector(&mut r, DY);
        let vertex = JoinPoint::pair(1.0, y.clone(), unit_vector(&mut r, DZ)).expect("valid weights");
        incl = incl.max(dev(join_map(g, &vertex).and_then(|l| g.eval(&y).and_then(inclusion).map(|r| l.distance(&r)))));
        let yz = random_pair(&mut r, i);
        id = id.max(dev(join_map(&SampledMap::identity(DY), &yz).map(|l| l.distance(&yz))));
        point = point.max(dev(psi_map(&ParamMap::ignoring_param(g, 0), &[], &yz)
            .and_then(|l| join_map(g, &yz).map(|r| l.distance(&r)))));
        // J_Z(f) on the subjoin YZ of (AY)Z agrees with J_Z(f|_Y).
        let f = &ay_maps[i % ay_maps.len()];
        let f_y = SampledMap::new("f|Y", DY, DW, {
            let f = f.clone();
            move |y: &[f64]| {
                let p = JoinPoint::vertex(2, 1, y.to_vec()).expect("valid weights");
                f.eval(&p.embed(&[DA, DY]).expect("dimensions match")).expect("dimensions match")
            }
        });
        let triple = yz.clone();
        let in_ayz = JoinPoint::new(vec![(0.0, None), (triple.weight(0), triple.point(0).map(<[f64]>::to_vec)), (triple.weight(1), triple.point(1).map(<[f64]>::to_vec))]);
        restrict = restrict.max(dev(in_ayz
            .and_then(|p| join_map_on_triple(f, &p, [DA, DY]))
            .and_then(|l| join_map(&f_y, &yz).map(|r| l.distance(&r)))));
    }
    suite.push("J_Z(f)[1 y] = incl f(y)", DIAGRAM_SAMPLES, incl, ALGEBRAIC_TOL);
    suite.push("J_Z(id) = id", DIAGRAM_SAMPLES, id, ALGEBRAIC_TOL);
    suite.push("psi over a point = J_Z", DIAGRAM_SAMPLES, point, ALGEBRAIC_TOL);
    suite.push("J_Z(f) restricted to YZ = J_Z(f|Y)", DIAGRAM_SAMPLES, restrict, SAMPLED_TOL);

    let (mut left, mut right, mut nested, mut beta_q) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..DIAGRAM_SAMPLES {
        let w = [weight(&mut r, i), weight(&mut r, i + 3), weight(&mut r, i + 5)];
        let total: f64 = w.iter().sum();
        let w = if total > 0.0 { w.map(|x| x / total) } else { [1.0, 0.0, 0.0] };
        let p = JoinPoint::new(vec![
            (w[0], Some(unit_vector(&mut r, DA))),
            (w[1], Some(unit_vector(&mut r, DY))),
            (w[2], Some(unit_vector(&mut r, DZ))),
        ])
        .expect("normalised weights");
        left = left.max(dev(split_left(&p).and_then(|n| assoc_left(&n)).map(|q| q.distance(&p))));
        right = right.max(dev(split_right(&p).and_then(|n| assoc_right(&n)).map(|q| q.distance(&p))));

        let s = weight(&mut r, i + 1);
        let ln = LeftNested {
            s,
            xy: Some(JoinPoint::pair(weight(&mut r, i + 2), unit_vector(&mut r, DA), unit_vector(&mut r, DY)).expect("valid weights")),
            z: Some(unit_vector(&mut r, DZ)),
        };
        let back = assoc_left(&ln).and_then(|q| split_left(&q)).and_then(|m| m.distance(&ln));
        let t = weight(&mut r, i + 4);
        let a = unit_vector(&mut r, DA);
        let yz = random_pair(&mut r, i + 6);
        let rn = RightNested { t, x: Some(a.clone()), yz: Some(yz.clone()) };
        let back_r = assoc_right(&rn)
            .and_then(|q| split_right(&q))
            .and_then(|m| assoc_right(&m))
            .and_then(|q| assoc_right(&rn).map(|q0| q.distance(&q0)));
        nested = nested.max(dev(back)).max(dev(back_r));
        beta_q = beta_q.max(dev(beta(&a, &yz, t).and_then(|b| assoc_right(&rn).map(|q| b.distance(&q)))));
    }
    suite.push("(XY)Z -> XYZ -> (XY)Z and back", DIAGRAM_SAMPLES, left, ALGEBRAIC_TOL);
    suite.push("X(YZ) -> XYZ -> X(YZ) and back", DIAGRAM_SAMPLES, right, ALGEBRAIC_TOL);
    suite.push("nested points survive the round trip", 2 * DIAGRAM_SAMPLES, nested, ALGEBRAIC_TOL);
    suite.push("beta = quotient map of A(YZ)", DIAGRAM_SAMPLES, beta_q, ALGEBRAIC_TOL);
    suite
}

const DU: usize = 2;
const DV: usize = 1;
const RADIUS: f64 = 2.5;

fn near_seam(x: f64) -> bool {
    (x - 1.0).abs() < SEAM_MARGIN
}

fn suspension_suite(seed: u64) -> Suite {
    let mut suite = Suite::new("suspension");
    let mut r = rng(seed, 3);

    let x = unit_vector(&mut r, DU);
    let ends = dev(eta(&x, 0.0).map(|p| if p.to_sphere().is_zero() { 0.0 } else { f64::INFINITY }))
        .max(dev(eta(&x, 1.0).map(|p| if p.to_sphere().is_infinite() { 0.0 } else { f64::INFINITY })));
    suite.push("eta(x, 0) = 0 and eta(x, 1) = infinity", 2, ends, 0.0);

    let zero = CompactifiedPoint::zero(DU);
    let infinity = CompactifiedPoint::Infinity;
    let mut contract_failures = 0;
    let maps = test_maps(DU);
    let linear = SelfMap::identity(DU);
    for f in &maps {
        let tf = tau(f, Norm::Euclidean);
        contract_failures += usize::from(!f.apply(&zero).is_infinite() || !f.apply(&infinity).is_infinite());
        contract_failures += usize::from(!tf.apply(&zero).is_zero() || !tf.apply(&infinity).is_infinite());
    }
    let sf = sigma(&linear, Norm::Euclidean);
    contract_failures += usize::from(!sf.apply(&zero).is_infinite() || !sf.apply(&infinity).is_infinite());
    suite.exact("tau f fixes 0 and infinity; sigma f sends both to infinity", 2 * maps.len() + 1, contract_failures);

    for f in &maps {
        let left = tau(f, Norm::Euclidean).smash(DV);
        let right = tau(&f.smash(DV), Norm::Sum { split: DU });
        let (mut d0, mut d1, mut n) = (0.0f64, 0.0f64, 0);
        let mut basepoint = 0.0f64;
        while n < H_SAMPLES {
            let (ru, rv) = (r.gen_range(0.0..RADIUS), r.gen_range(0.0..RADIUS));
            let u = vector_of_norm(&mut r, DU, ru);
            let v = vector_of_norm(&mut r, DV, rv);
            let nu = u.iter().map(|c| c * c).sum::<f64>().sqrt();
            let nv = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if near_seam(nu) || near_seam(nu + nv) {
                continue;
            }
            n += 1;
            let w = CompactifiedPoint::Finite(u.into_iter().chain(v).collect());
            d0 = d0.max(dev(h(0.0, f, &w).map(|a| a.relative_deviation(&left.apply(&w)))));
            d1 = d1.max(dev(h(1.0, f, &w).map(|a| a.relative_deviation(&right.apply(&w)))));
            let t: f64 = r.gen();
            basepoint = basepoint
                .max(dev(h(t, f, &CompactifiedPoint::zero(DU + DV)).map(|a| a.relative_deviation(&CompactifiedPoint::zero(DU + DV)))));
            if t > 0.0 {
                basepoint = basepoint.max(dev(h(t, f, &CompactifiedPoint::Infinity).map(|a| a.relative_deviation(&CompactifiedPoint::Infinity))));
            }
        }
        suite.push(format!("h(0, f, .) = (tau f) ^ S^V, f = {}", f.name()), H_SAMPLES, d0, SAMPLED_TOL);
        suite.push(format!("h(1, f, .) = tau(f ^ S^V), f = {}", f.name()), H_SAMPLES, d1, SAMPLED_TOL);
        suite.push(format!("h(t, f, .) fixes 0 and infinity, f = {}", f.name()), H_SAMPLES, basepoint, ALGEBRAIC_TOL);
    }
    suite
}

/// Property checks that depend on the configured group and universe.
pub fn config_suites(config: &JobConfig) -> Result<VerificationTable> {
    let mut suite = Suite::new("config");
    let group = config.group.build(config.cap())?;
    let lattice = Arc::new(SubgroupLattice::new(group.clone()));
    let universe = Universe::new(lattice.clone(), config.universe.clone())?;

    let mut idempotence: f64 = 0.0;
    let mut trace: f64 = 0.0;
    let mut cases = 0;
    let reps: Vec<_> = config.universe.blocks.iter().map(|b| build_rep(&group, b)).collect::<Result<_>>()?;
    for (j, rep) in reps.iter().enumerate() {
        if rep.dim() > crate::rep::SVD_MAX_DIM {
            continue;
        }
        for (i, sub) in lattice.subgroups().iter().enumerate() {
            let p = rep.projector(sub);
            idempotence = idempotence.max((&p * &p - &p).abs().max());
            trace = trace.max((p.trace() - universe.block_fixed_dims(j)[i] as f64).abs());
            cases += 1;
        }
    }
    suite.push("projector P_H is idempotent", cases, idempotence, SAMPLED_TOL);
    suite.push("trace P_H = dim U^H", cases, trace, SAMPLED_TOL);

    let mut additivity = 0;
    let mut join = 0;
    let mut pairs = 0;
    for i in 0..reps.len() {
        for j in i..reps.len() {
            pairs += 1;
            let sum = reps[i].direct_sum(&reps[j])?;
            let dims = sum.fixed_dim_table(&lattice)?.dims;
            let expected: Vec<usize> =
                universe.block_fixed_dims(i).iter().zip(universe.block_fixed_dims(j)).map(|(a, b)| a + b).collect();
            additivity += usize::from(dims != expected);
            let joined = crate::family::join_isotropy(&lattice, universe.block_isotropy(i), universe.block_isotropy(j));
            join += usize::from(joined != isotropy_indices(&lattice, &dims));
        }
    }
    suite.exact("dim (U + V)^H = dim U^H + dim V^H", pairs, additivity);
    suite.exact("Iso(S(U) * S(V)) = Iso(S(U + V))", pairs, join);

    let mut filtration = 0;
    let spheres = universe.block_count() * 2;
    for n in 1..=spheres {
        let dims = universe.sphere_dims(1, n);
        filtration += filtration_dims(&lattice, &dims)?.check(&lattice).len();
    }
    suite.exact("orbit-type filtration dimension identities", spheres, filtration);

    let closure = crate::family::family_closure(&lattice, &[universe.family().member_indices().clone()]);
    suite.exact("family closure is idempotent", 1, usize::from(closure.member_indices() != universe.family().member_indices()));

    let first = run(config)?;
    let second = run(config)?;
    suite.exact("identical runs give identical reports", 1, usize::from(first.to_json()? != second.to_json()?));

    let mut monotone = 0;
    let mut checked = 0;
    for entry in &first.certificates {
        let CertificateOutcome::Certified { certificate: c } = &entry.outcome else { continue };
        let profile = entry.profile;
        checked += 1;
        let passes = |m, n, k| check_profile(&universe, profile, m, n, k).map(|c| c.passes());
        let mut bad = !passes(c.m, c.n, c.k)? || !passes(c.m, c.n + 1, c.k)? || !passes(c.m, c.n + 2, c.k)?;
        if c.n > c.m {
            bad |= passes(c.m, c.n - 1, c.k)?;
        }
        if c.k > 0 {
            bad |= !passes(c.m, c.n, c.k - 1)?;
        }
        monotone += usize::from(bad);
    }
    suite.exact("certificates hold at n, n+1, n+2 and k-1, fail at n-1", checked, monotone);

    Ok(VerificationTable { seed: config.seed(), rows: suite.rows })
}

/// Every suite for a configuration.
pub fn verify(config: &JobConfig, seed: u64) -> Result<VerificationTable> {
    verify_with(config, seed, Mutation::None)
}

pub fn verify_with(config: &JobConfig, seed: u64, mutation: Mutation) -> Result<VerificationTable> {
    let mut table = formula_suites(seed, mutation);
    table.rows.extend(config_suites(config)?.rows);
    Ok(table)
}

/// `Err(Verification)` naming the failed rows, if any.
pub fn require_pass(table: &VerificationTable) -> Result<()> {
    let failed: Vec<String> = table.failures().map(|r| r.identity.clone()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Verification(failed.join("; ")))
    }
}
