//! Job configuration: which group, which universe, which profiles.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::named::{self, GroupGenerators};
use crate::group::{Perm, PermGroup, DEFAULT_ORDER_CAP};
use crate::stable::{Profile, UniverseSpec, DEFAULT_HORIZON};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5EED;

/// How the group is given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// `C<n>`, `D<n>` (order `2n`), `S<n>`, `A<n>`, `Q8`, `V4`, or products such as `C2xS3`.
    Named { name: String },
    /// Generators given as image arrays on `{0, .., degree - 1}`.
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    /// Direct product acting on the disjoint union of the factors' points.
    Product { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    pub fn generators(&self) -> Result<GroupGenerators> {
        match self {
            GroupSpec::Named { name } => named::generators_by_name(name),
            GroupSpec::Permutation { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|g| {
                        if g.len() != *degree {
                            return Err(Error::Config(format!("generator {g:?} does not act on {degree} points")));
                        }
                        Perm::from_images(g.clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupGenerators { degree: *degree, generators: perms })
            }
            GroupSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::Config("a product needs at least one factor".into()));
                }
                let gens = factors.iter().map(GroupSpec::generators).collect::<Result<Vec<_>>>()?;
                Ok(named::product_generators(&gens))
            }
        }
    }

    pub fn build(&self, cap: usize) -> Result<Arc<PermGroup>> {
        Ok(Arc::new(self.generators()?.enumerate(cap)?))
    }
}

fn default_profiles() -> Vec<Profile> {
    vec![Profile::Theorem1Stabilization]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema_version: u32,
    pub group: GroupSpec,
    pub universe: UniverseSpec,
    pub k: u32,
    #[serde(default = "default_profiles")]
    pub profiles: Vec<Profile>,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub horizon: Option<usize>,
    #[serde(default)]
    pub cap: Option<usize>,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: JobConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        JobConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.universe.blocks.is_empty() {
            return Err(Error::Config("the universe needs at least one block".into()));
        }
        if self.profiles.is_empty() {
            return Err(Error::Config("no profiles requested".into()));
        }
        if self.horizon == Some(0) {
            return Err(Error::Config("horizon must be positive".into()));
        }
        if self.cap == Some(0) {
            return Err(Error::Config("cap must be positive".into()));
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn horizon(&self) -> usize {
        self.horizon.unwrap_or(DEFAULT_HORIZON)
    }

    pub fn cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_ORDER_CAP)
    }

    /// Copy with every optional flag filled in, as echoed in reports.
    pub fn resolved(&self) -> JobConfig {
        JobConfig {
            seed: Some(self.seed()),
            horizon: Some(self.horizon()),
            cap: Some(self.cap()),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{"schema_version":1,"group":{"kind":"named","name":"S3"},
            "universe":{"blocks":[{"kind":"sign"},{"kind":"regular"},{"kind":"permutation","points":3},
              {"kind":"direct_sum","parts":[{"kind":"standard"},{"kind":"trivial"}]}],"schedule":"cyclic"},
            "k":0,"profiles":["far-in-U","theorem1-stabilization","theorem1-limit","suspension","prop61"]}"#;
        let c = JobConfig::from_json(text).unwrap();
        assert_eq!(c.profiles, Profile::ALL.to_vec());
        assert_eq!(c.group.build(c.cap()).unwrap().order(), 6);
        assert_eq!(c.horizon(), DEFAULT_HORIZON);
    }

    #[test]
    fn permutation_and_product_groups() {
        let g = GroupSpec::Permutation { degree: 3, generators: vec![vec![1, 2, 0]] };
        assert_eq!(g.build(DEFAULT_ORDER_CAP).unwrap().order(), 3);
        let p = GroupSpec::Product { factors: vec![g, GroupSpec::Named { name: "C2".into() }] };
        assert_eq!(p.build(DEFAULT_ORDER_CAP).unwrap().order(), 6);
        let bad = GroupSpec::Permutation { degree: 3, generators: vec![vec![1, 0]] };
        assert!(matches!(bad.build(10), Err(Error::Config(_))));
        let big = GroupSpec::Named { name: "S6".into() };
        assert!(matches!(big.build(100), Err(Error::SizeLimit { cap: 100 })));
    }

    #[test]
    fn rejects_bad_configs() {
        let empty = r#"{"schema_version":1,"group":{"kind":"named","name":"C2"},"universe":{"blocks":[]},"k":0}"#;
        assert_eq!(JobConfig::from_json(empty).unwrap_err().exit_code(), 2);
        let negative = r#"{"schema_version":1,"group":{"kind":"named","name":"C2"},"universe":{"blocks":[{"kind":"sign"}]},"k":-1}"#;
        assert!(matches!(JobConfig::from_json(negative), Err(Error::Config(_))));
        let version = r#"{"schema_version":2,"group":{"kind":"named","name":"C2"},"universe":{"blocks":[{"kind":"sign"}]},"k":0}"#;
        assert!(matches!(JobConfig::from_json(version), Err(Error::Config(_))));
        let unknown = r#"{"schema_version":1,"group":{"kind":"named","name":"C2"},"universe":{"blocks":[{"kind":"sign"}]},"k":0,"extra":1}"#;
        assert!(JobConfig::from_json(unknown).is_err());
    }
}
