//! The full pipeline, group to splitting, and the JSON report it produces.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config::{JobConfig, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::family::{filtration_dims, join_isotropy};
use crate::group::{abelianization, normalizer, FgAbelianGroup, FiniteGroup, Perm, SubgroupLattice};
use crate::limit::{burnside_cross_check, splitting, BurnsideCheck, CheckStatus, SplittingReport};
use crate::rep::{isotropy_indices, RepSpec};
use crate::stable::{stable_range, Profile, StabilityCertificate, Universe, CERTIFIED_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub abelian: bool,
    pub abelianization: FgAbelianGroup,
}

/// Class `(H_label)` of subgroups; labels follow the lattice enumeration, largest order first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub label: usize,
    pub order: usize,
    pub conjugates: usize,
    pub normalizer_order: usize,
    pub generators: Vec<Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub subgroups: usize,
    pub classes: Vec<ClassSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSummary {
    pub index: usize,
    pub spec: RepSpec,
    pub dim: usize,
    /// `dim U^H` for each class, in label order.
    pub fixed_dims: Vec<usize>,
    pub isotropy_classes: Vec<usize>,
    pub contains_regular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub subgroups: usize,
    pub classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateOutcome {
    Certified { certificate: StabilityCertificate },
    SearchLimit { horizon: usize, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub profile: Profile,
    pub wording: String,
    #[serde(flatten)]
    pub outcome: CertificateOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub name: String,
    pub status: CheckStatus,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl ConsistencyCheck {
    fn new(name: &str, cases: usize, failures: Vec<String>) -> Self {
        let status = if failures.is_empty() { CheckStatus::Pass } else { CheckStatus::Fail };
        ConsistencyCheck { name: name.into(), status, cases, failures }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossChecks {
    pub burnside: BurnsideCheck,
    pub join_isotropy: ConsistencyCheck,
    pub filtration: ConsistencyCheck,
}

impl CrossChecks {
    pub fn all_pass(&self) -> bool {
        self.burnside.status != CheckStatus::Fail
            && self.join_isotropy.status == CheckStatus::Pass
            && self.filtration.status == CheckStatus::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: JobConfig,
    pub group: GroupSummary,
    pub lattice: LatticeSummary,
    pub blocks: Vec<BlockSummary>,
    pub family: FamilySummary,
    pub certificates: Vec<CertificateEntry>,
    pub splitting: SplittingReport,
    pub cross_checks: CrossChecks,
}

impl Report {
    /// 4 if a cross-check failed, 3 if some profile ran out of horizon, else 0.
    pub fn exit_code(&self) -> i32 {
        if !self.cross_checks.all_pass() {
            4
        } else if self.certificates.iter().any(|c| matches!(c.outcome, CertificateOutcome::SearchLimit { .. })) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Report> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn certificate(&self, profile: Profile) -> Option<&StabilityCertificate> {
        self.certificates.iter().find(|c| c.profile == profile).and_then(|c| match &c.outcome {
            CertificateOutcome::Certified { certificate } => Some(certificate),
            CertificateOutcome::SearchLimit { .. } => None,
        })
    }

    /// Short plain-text digest for the terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let _ = writeln!(out, "group: order {}, {} subgroups in {} classes", g.order, self.lattice.subgroups, self.lattice.classes.len());
        let labels: Vec<String> = self.family.classes.iter().map(|c| format!("(H_{c})")).collect();
        let _ = writeln!(out, "family: {}", labels.join(", "));
        for c in &self.certificates {
            match &c.outcome {
                CertificateOutcome::Certified { certificate } => {
                    let _ = writeln!(out, "{}: (m, n) = ({}, {}) at k = {} [certified bound]", c.profile, certificate.m, certificate.n, certificate.k);
                }
                CertificateOutcome::SearchLimit { horizon, detail } => {
                    let _ = writeln!(out, "{}: no certificate within horizon {horizon}: {detail}", c.profile);
                }
            }
        }
        let s = &self.splitting;
        let _ = writeln!(out, "pi_0 = {}, pi_1 = {}", s.i0.total, s.i1.total);
        let p = &s.pointed_variant;
        let _ = writeln!(out, "pointed: pi_0 = {}, pi_1 = {}", p.i0.total, p.i1.total);
        let _ = writeln!(out, "burnside cross-check: {:?}", self.cross_checks.burnside.status);
        out
    }
}

fn class_labels(lattice: &SubgroupLattice, members: &BTreeSet<usize>) -> Vec<usize> {
    let classes: BTreeSet<usize> = members.iter().map(|&i| lattice.class_index(i) + 1).collect();
    classes.into_iter().collect()
}

fn representative_indices(lattice: &SubgroupLattice) -> Vec<usize> {
    lattice
        .classes()
        .iter()
        .map(|c| lattice.index_of(&c.representative).expect("representative lies in the lattice"))
        .collect()
}

/// Runs the pipeline. Errors are returned for invalid input and size limits;
/// horizon exhaustion and failed cross-checks are recorded in the report.
pub fn run(config: &JobConfig) -> Result<Report> {
    config.validate()?;
    let group = config.group.build(config.cap())?;
    let lattice = Arc::new(SubgroupLattice::new(group.clone()));
    let universe = Universe::new(lattice.clone(), config.universe.clone())?;
    let reps = representative_indices(&lattice);

    let generators_of = |h: &crate::group::Subgroup| -> Vec<Perm> {
        h.generators().into_iter().map(|g| group.element(g).clone()).collect()
    };
    let lattice_summary = LatticeSummary {
        subgroups: lattice.len(),
        classes: lattice
            .classes()
            .iter()
            .enumerate()
            .map(|(c, class)| ClassSummary {
                label: c + 1,
                order: class.representative.order(),
                conjugates: class.size(),
                normalizer_order: normalizer(&class.representative).order(),
                generators: generators_of(&class.representative),
            })
            .collect(),
    };

    let blocks = (0..universe.block_count())
        .map(|j| {
            let dims = universe.block_fixed_dims(j);
            BlockSummary {
                index: j + 1,
                spec: config.universe.blocks[j].clone(),
                dim: universe.block(j).dim(),
                fixed_dims: reps.iter().map(|&i| dims[i]).collect(),
                isotropy_classes: class_labels(&lattice, universe.block_isotropy(j)),
                contains_regular: config.universe.blocks[j].contains_regular(),
            }
        })
        .collect();

    let family = universe.family();
    let family_summary = FamilySummary { subgroups: family.len(), classes: class_labels(&lattice, family.member_indices()) };

    let mut certificates = Vec::new();
    for &profile in &config.profiles {
        let outcome = match stable_range(&universe, config.k, profile, config.horizon()) {
            Ok(certificate) => CertificateOutcome::Certified { certificate },
            Err(Error::SearchLimit { horizon, detail }) => CertificateOutcome::SearchLimit { horizon, detail },
            Err(e) => return Err(e),
        };
        certificates.push(CertificateEntry { profile, wording: CERTIFIED_BOUND.into(), outcome });
    }

    let cross_checks = CrossChecks {
        burnside: burnside_cross_check(family, universe.contains_regular()),
        join_isotropy: join_isotropy_check(&universe),
        filtration: filtration_check(&universe)?,
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo { name: "equistab".into(), version: env!("CARGO_PKG_VERSION").into() },
        config: config.resolved(),
        group: GroupSummary {
            order: group.order(),
            degree: group.degree(),
            generators: group.generators().to_vec(),
            abelian: group.is_abelian(),
            abelianization: abelianization(group.as_ref()),
        },
        lattice: lattice_summary,
        blocks,
        family: family_summary,
        certificates,
        splitting: splitting(family, universe.trivial_block_present()),
        cross_checks,
    })
}

/// `Iso(S(U ⊕ V))` from the join formula against the fixed dimensions of the sum, over all block pairs.
fn join_isotropy_check(universe: &Universe) -> ConsistencyCheck {
    let lattice = universe.lattice();
    let b = universe.block_count();
    let mut failures = Vec::new();
    let mut cases = 0;
    for i in 0..b {
        for j in i..b {
            cases += 1;
            let joined = join_isotropy(lattice, universe.block_isotropy(i), universe.block_isotropy(j));
            let summed: Vec<usize> = universe
                .block_fixed_dims(i)
                .iter()
                .zip(universe.block_fixed_dims(j))
                .map(|(a, c)| a + c)
                .collect();
            let direct = isotropy_indices(lattice, &summed);
            if joined != direct {
                failures.push(format!(
                    "blocks {} and {}: join gives classes {:?}, the sum gives {:?}",
                    i + 1,
                    j + 1,
                    class_labels(lattice, &joined),
                    class_labels(lattice, &direct)
                ));
            }
        }
    }
    ConsistencyCheck::new("join isotropy equals isotropy of the direct sum", cases, failures)
}

/// Filtration identities for each block sphere and for one full cycle of blocks.
fn filtration_check(universe: &Universe) -> Result<ConsistencyCheck> {
    let lattice = universe.lattice();
    let b = universe.block_count();
    let mut spheres: Vec<(String, Vec<i64>)> =
        (1..=b).map(|p| (format!("S(U_{p})"), universe.sphere_dims(p, p))).collect();
    if b > 1 {
        spheres.push((format!("S(U_1 ⊕ … ⊕ U_{b})"), universe.sphere_dims(1, b)));
    }
    let mut failures = Vec::new();
    for (name, dims) in &spheres {
        for v in filtration_dims(lattice, dims)?.check(lattice) {
            failures.push(format!(
                "{name}, q = {}, subgroup {}: {} expected {} found {}",
                v.q, v.subgroup, v.identity, v.expected, v.found
            ));
        }
    }
    Ok(ConsistencyCheck::new("orbit-type filtration dimensions", spheres.len(), failures))
}
