//! `key = value` configuration files, overridden by command-line flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use crate::UsageError;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(UsageError(format!("config line {}: expected key = value", n + 1)).into());
            };
            values.insert(key.trim().replace('-', "_"), value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn string(&self, key: &str) -> Option<String> {
        self.values.get(key).cloned()
    }

    pub fn float(&self, key: &str) -> Result<Option<f64>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| UsageError(format!("config key '{key}': '{v}' is not a number")).into()),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.values.get(key).map(String::as_str), Some("true" | "1" | "yes"))
    }
}

/// Flag value if given, else the config value.
pub fn merged(flag: Option<f64>, cfg: &ConfigFile, key: &str) -> Result<Option<f64>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.float(key),
    }
}

/// Like [`merged`] but the value must be present somewhere.
pub fn required(flag: Option<f64>, cfg: &ConfigFile, key: &str) -> Result<f64> {
    let v = merged(flag, cfg, key)?.ok_or_else(|| UsageError(format!("missing --{}", key.replace('_', "-"))))?;
    if !v.is_finite() {
        return Err(UsageError(format!("--{key} must be finite")).into());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let cfg = ConfigFile::parse("# comment\nk1 = 0.3\nmass=1 # trailing\nk-max = 5\n").unwrap();
        assert_eq!(cfg.float("k1").unwrap(), Some(0.3));
        assert_eq!(cfg.float("k_max").unwrap(), Some(5.0));
        assert_eq!(merged(Some(2.0), &cfg, "mass").unwrap(), Some(2.0));
        assert_eq!(required(None, &cfg, "mass").unwrap(), 1.0);
        assert!(required(None, &cfg, "k2").is_err());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(ConfigFile::parse("k1 0.3").is_err());
        assert!(ConfigFile::parse("k1 = abc").unwrap().float("k1").is_err());
    }
}
