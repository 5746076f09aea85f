//! `key = value` defaults file and environment overrides.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

pub const KEYS: [&str; 7] = ["algebra", "side", "family", "order", "fock", "backend", "format"];

pub const ENV_CONFIG: &str = "KTRMATRIX_CONFIG";
pub const ENV_ORDER: &str = "KTRMATRIX_ORDER";
pub const ENV_FOCK: &str = "KTRMATRIX_FOCK";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("config line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value {value:?} for {key}")]
    Value { key: String, value: String },
}

/// Parsed config file; later lines override earlier ones.
#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: n + 1 })?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey { line: n + 1, key: k.into() });
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.display().to_string(), source })?;
        Config::parse(&text)
    }

    /// Flag, then environment (for `order`/`fock`), then file.
    pub fn pick<T: std::str::FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>, ConfigError> {
        if flag.is_some() {
            return Ok(flag);
        }
        let env = match key {
            "order" => std::env::var(ENV_ORDER).ok(),
            "fock" => std::env::var(ENV_FOCK).ok(),
            _ => None,
        };
        match env.or_else(|| self.values.get(key).cloned()) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| ConfigError::Value { key: key.into(), value: v }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_overrides() {
        let c = Config::parse("# defaults\norder = 4\n\nformat=json # trailing\norder = 6\n").unwrap();
        assert_eq!(c.pick::<String>("format", None).unwrap().as_deref(), Some("json"));
        assert_eq!(c.pick::<String>("format", Some("text".into())).unwrap().as_deref(), Some("text"));
        assert_eq!(c.pick::<String>("side", None).unwrap(), None);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(matches!(Config::parse("colour = red"), Err(ConfigError::UnknownKey { line: 1, .. })));
        assert!(matches!(Config::parse("order 4"), Err(ConfigError::Syntax { line: 1 })));
        let c = Config::parse("family = two").unwrap();
        assert!(c.pick::<u8>("family", None).is_err());
    }
}
