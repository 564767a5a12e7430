//! Run configuration: defaults, then the `SYNCGAME_CONFIG` file, then flags.

use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;

pub const CONFIG_ENV: &str = "SYNCGAME_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub degree_bound: usize,
    pub rule_cap: usize,
    pub tol: f64,
    pub support_eps: f64,
    /// `None` leaves the worker pool at its default size.
    pub threads: Option<usize>,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            degree_bound: 6,
            rule_cap: 50_000,
            tol: 1e-10,
            support_eps: 1e-6,
            threads: None,
            format: Format::Json,
        }
    }
}

/// Every field optional; used both for the config file and for flags.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub degree_bound: Option<usize>,
    pub rule_cap: Option<usize>,
    pub tol: Option<f64>,
    pub support_eps: Option<f64>,
    pub threads: Option<usize>,
    pub format: Option<Format>,
}

impl Config {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(d) = o.degree_bound {
            self.degree_bound = d;
        }
        if let Some(c) = o.rule_cap {
            self.rule_cap = c;
        }
        if let Some(t) = o.tol {
            self.tol = t;
        }
        if let Some(e) = o.support_eps {
            self.support_eps = e;
        }
        if let Some(t) = o.threads {
            self.threads = Some(t);
        }
        if let Some(f) = o.format {
            self.format = f;
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.degree_bound < 2 {
            bail!("degree bound must be at least 2, got {}", self.degree_bound);
        }
        if !(self.tol > 0.0) {
            bail!("tol must be positive, got {}", self.tol);
        }
        if !(self.support_eps > self.tol) {
            bail!(
                "support_eps ({}) must exceed tol ({})",
                self.support_eps,
                self.tol
            );
        }
        if self.threads == Some(0) {
            bail!("threads must be at least 1");
        }
        Ok(())
    }

    /// Defaults, overlaid with the file named by `env_path` (if any), then
    /// with the flags.
    pub fn resolve(env_path: Option<&Path>, flags: &Overrides) -> anyhow::Result<Self> {
        let mut cfg = Self::default();
        if let Some(path) = env_path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let file: Overrides = serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?;
            cfg.apply(&file);
        }
        cfg.apply(flags);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"degree_bound": 3, "tol": 1e-8, "format": "text"}"#).unwrap();
        let flags = Overrides {
            degree_bound: Some(5),
            ..Overrides::default()
        };
        let cfg = Config::resolve(Some(&path), &flags).unwrap();
        assert_eq!(cfg.degree_bound, 5);
        assert_eq!(cfg.tol, 1e-8);
        assert_eq!(cfg.format, Format::Text);
        assert_eq!(cfg.rule_cap, 50_000);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |o: Overrides| Config::resolve(None, &o).is_err();
        assert!(bad(Overrides {
            degree_bound: Some(1),
            ..Overrides::default()
        }));
        assert!(bad(Overrides {
            tol: Some(0.0),
            ..Overrides::default()
        }));
        assert!(bad(Overrides {
            support_eps: Some(1e-12),
            ..Overrides::default()
        }));
    }
}
