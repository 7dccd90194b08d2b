//! Run manifests, JSON summaries and the output directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const TOOL_VERSION: &str = concat!("trigal ", env!("CARGO_PKG_VERSION"));

/// Everything needed to reproduce a run. Written next to each summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config_path: Option<String>,
    pub subcommand: String,
    pub master_seed: u64,
    pub threads: usize,
    pub output_dir: String,
    pub tool_version: String,
    pub config_digest: String,
}

/// The machine-independent part of a run: identical for identical inputs,
/// whatever the thread count or output location.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary<T> {
    pub subcommand: String,
    pub master_seed: u64,
    pub tool_version: String,
    pub config_digest: String,
    pub checks: BTreeMap<String, bool>,
    pub results: T,
}

impl<T: Serialize> Summary<T> {
    pub fn new(manifest: &RunManifest, checks: BTreeMap<String, bool>, results: T) -> Self {
        Self {
            subcommand: manifest.subcommand.clone(),
            master_seed: manifest.master_seed,
            tool_version: manifest.tool_version.clone(),
            config_digest: manifest.config_digest.clone(),
            checks,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summaries are plain data");
        s.push('\n');
        s
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.as_str()).collect()
    }
}

/// Named boolean checks in a stable order.
#[derive(Clone, Debug, Default)]
pub struct Checks(BTreeMap<String, bool>);

impl Checks {
    pub fn add(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.0.insert(name.into(), ok);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.0.values().all(|&b| b)
    }

    pub fn into_map(self) -> BTreeMap<String, bool> {
        self.0
    }
}

/// Output directory, created on first write.
#[derive(Clone, Debug)]
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.root).map_err(|e| CliError::io(&self.root, e))?;
        let path = self.root.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    /// Writes `<stem>.json` and `<stem>.manifest.json`.
    pub fn write_summary<T: Serialize>(
        &self,
        stem: &str,
        manifest: &RunManifest,
        summary: &Summary<T>,
    ) -> Result<PathBuf, CliError> {
        let mut m = serde_json::to_string_pretty(manifest).expect("plain data");
        m.push('\n');
        self.write(&format!("{stem}.manifest.json"), &m)?;
        self.write(&format!("{stem}.json"), &summary.to_json())
    }
}
