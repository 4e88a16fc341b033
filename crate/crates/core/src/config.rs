//! Run configuration: a flat `key = value` file, overridable by flags.

use std::path::PathBuf;

use crate::arith::DEFAULT_ENTRY_BUDGET;
use crate::error::{Error, Result};

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "SHIFTCONV_CACHE_DIR";

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub cache_dir: PathBuf,
    /// Maximum number of entries in any sieve or coefficient table.
    pub memory_budget: usize,
    pub quad_tolerance: f64,
    /// The `epsilon` of the dual-sum cutoff windows.
    pub cutoff_epsilon: f64,
    pub safety_factor: f64,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            cache_dir: PathBuf::from(".shiftconv-cache"),
            memory_budget: DEFAULT_ENTRY_BUDGET,
            quad_tolerance: 1e-13,
            cutoff_epsilon: 0.1,
            safety_factor: 10.0,
            threads: 1,
        }
    }
}

impl Config {
    /// Parses `key = value` lines on top of the defaults. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::InvalidArgument(format!("config key '{key}': {what} '{value}'"));
        match key {
            "cache_dir" => self.cache_dir = PathBuf::from(value),
            "memory_budget" => {
                self.memory_budget = value.parse().map_err(|_| bad("not an integer"))?
            }
            "quad_tolerance" => self.quad_tolerance = value.parse().map_err(|_| bad("not a number"))?,
            "cutoff_epsilon" => self.cutoff_epsilon = value.parse().map_err(|_| bad("not a number"))?,
            "safety_factor" => self.safety_factor = value.parse().map_err(|_| bad("not a number"))?,
            "threads" => self.threads = value.parse().map_err(|_| bad("not an integer"))?,
            _ => return Err(Error::InvalidArgument(format!("unknown config key '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let positive = self.memory_budget > 0
            && self.quad_tolerance > 0.0
            && self.cutoff_epsilon > 0.0
            && self.safety_factor > 0.0
            && self.threads > 0;
        if positive {
            Ok(())
        } else {
            Err(Error::InvalidArgument("all config values must be positive".into()))
        }
    }

    /// Applies the cache-directory environment override, if set.
    pub fn with_env(mut self) -> Self {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            self.cache_dir = PathBuf::from(dir);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let cfg = Config::parse("# comment\nthreads = 4\nsafety_factor=20 # inline\n").unwrap();
        assert_eq!(cfg.threads, 4);
        assert_eq!(cfg.safety_factor, 20.0);
        assert_eq!(cfg.cutoff_epsilon, 0.1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("threads = 0").is_err());
        assert!(Config::parse("nonsense").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("threads = many").is_err());
    }
}
