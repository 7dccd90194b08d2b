//! JSON run configurations.
//!
//! ```json
//! {"kind": "iid-diag", "diag": [[0, 1, 2], [1, 1, 2]], "n": 40,
//!  "x": 100000, "k_max": 3, "samples": 50, "seed": 1}
//! ```
//!
//! Weights are `[value, numerator, denominator]` triples and must sum to one
//! exactly. A Dyson configuration gives `offdiag` (positive values) and the
//! diagonal shift `a` instead of `diag`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use trigal_core::model::{ModelConfig, Table};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "iid-diag")]
    IidDiag,
    #[serde(rename = "dyson")]
    Dyson,
}

fn default_x() -> u64 {
    100_000
}

fn default_k_max() -> u32 {
    3
}

fn default_samples() -> u64 {
    50
}

fn default_budget() -> u64 {
    10_000
}

/// A model together with the parameters of an experiment on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<(i64, i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offdiag: Option<Vec<(i64, i64, i64)>>,
    #[serde(default)]
    pub a: i64,
    pub n: usize,
    #[serde(default = "default_x")]
    pub x: u64,
    #[serde(default = "default_k_max")]
    pub k_max: u32,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

impl RunConfig {
    /// Parses and validates a configuration document.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Config(format!("{path}: {}", e.into_inner()))
        })?;
        cfg.model()?;
        if cfg.x < 5 {
            return Err(CliError::Config(format!("x: must be at least 5, got {}", cfg.x)));
        }
        if cfg.n == 0 {
            return Err(CliError::Config("n: must be positive".into()));
        }
        Ok(cfg)
    }

    /// The validated matrix model.
    pub fn model(&self) -> Result<ModelConfig, CliError> {
        let table = |field: &str, atoms: &Option<Vec<(i64, i64, i64)>>| {
            let atoms = atoms
                .as_ref()
                .ok_or_else(|| CliError::Config(format!("{field}: required for kind {:?}", self.kind)))?;
            Table::from_ratios(atoms).map_err(|e| CliError::Config(format!("{field}: {e}")))
        };
        let model = match self.kind {
            Kind::IidDiag => {
                if self.offdiag.is_some() {
                    return Err(CliError::Config("offdiag: not allowed for kind iid-diag".into()));
                }
                ModelConfig::iid_diag(table("diag", &self.diag)?, self.n)
                    .map_err(|e| CliError::Config(format!("diag: {e}")))?
            }
            Kind::Dyson => {
                if self.diag.is_some() {
                    return Err(CliError::Config("diag: not allowed for kind dyson; use a".into()));
                }
                ModelConfig::dyson(table("offdiag", &self.offdiag)?, self.a, self.n)
                    .map_err(|e| CliError::Config(format!("offdiag: {e}")))?
            }
        };
        Ok(model)
    }

    /// Compact JSON with sorted keys and every default filled in.
    pub fn canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        serde_json::to_string(&value).expect("plain data")
    }

    pub fn digest(&self) -> String {
        digest_str(&self.canonical_json())
    }
}

/// Lowercase hex SHA-256.
pub fn digest_str(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}
