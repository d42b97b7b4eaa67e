//! Optional TOML configuration mirroring the command-line flags.
//!
//! Keys are the flag names with dashes replaced by underscores. Explicit
//! flags always win over config values.

use std::path::{Path, PathBuf};

use crate::CliError;

#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<String>,
    pub p: Option<f64>,
    pub lambda: Option<f64>,
    pub pi_a: Option<f64>,
    pub pi_b: Option<f64>,
    pub pi_ab: Option<f64>,
    pub n: Option<u64>,
    pub reps: Option<u64>,
    pub seed: Option<u64>,
    pub baseline: Option<String>,
    pub mode: Option<String>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub counts: Option<String>,
    pub counts_file: Option<PathBuf>,
    pub levels: Option<String>,
    pub sweep: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub step: Option<f64>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
}

/// Flag value if given, otherwise the config value.
pub fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

/// Resolves a value that must come from somewhere.
pub fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Input(format!(
            "missing required value: pass --{flag} or set '{}' in the config file",
            flag.replace('-', "_")
        ))
    })
}
