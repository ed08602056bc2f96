//! Optional key=value configuration file, pointed at by the
//! `PATTERN_ORACLE_CONFIG` environment variable. Command-line flags always
//! win over file values.
//!
//! Format: one `key = value` per line, `#` starts a comment. Keys:
//! epsilon, theta, beam_width, consistency_filter, seed, format, top, jobs.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

pub const CONFIG_ENV_VAR: &str = "PATTERN_ORACLE_CONFIG";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Json,
    #[default]
    Text,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<OutputFormat, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (json, text, csv)")),
        }
    }
}

/// Settings a config file may provide. `None` means "not set here"; the
/// effective value is flag, then file, then built-in default.
#[derive(Debug, Clone, Default)]
pub struct GlobalConfig {
    pub epsilon: Option<f64>,
    pub theta: Option<f64>,
    pub beam_width: Option<usize>,
    pub consistency_filter: Option<bool>,
    pub seed: Option<u64>,
    pub format: Option<OutputFormat>,
    pub top: Option<usize>,
    pub jobs: Option<usize>,
}

pub fn load_config_file(path: impl AsRef<Path>) -> Result<GlobalConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = GlobalConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| err(format!("expected key = value, got {content:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        fn parse<T: FromStr>(v: &str) -> Result<T, String>
        where
            T::Err: std::fmt::Display,
        {
            v.parse().map_err(|e: T::Err| e.to_string())
        }
        match key {
            "epsilon" => cfg.epsilon = Some(parse(value).map_err(err)?),
            "theta" => cfg.theta = Some(parse(value).map_err(err)?),
            "beam_width" => cfg.beam_width = Some(parse(value).map_err(err)?),
            "consistency_filter" => cfg.consistency_filter = Some(parse(value).map_err(err)?),
            "seed" => cfg.seed = Some(parse(value).map_err(err)?),
            "format" => cfg.format = Some(parse(value).map_err(err)?),
            "top" => cfg.top = Some(parse(value).map_err(err)?),
            "jobs" => cfg.jobs = Some(parse(value).map_err(err)?),
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    Ok(cfg)
}

/// Load the file named by `PATTERN_ORACLE_CONFIG`, or defaults when unset.
pub fn load_from_env() -> Result<GlobalConfig, ConfigError> {
    match std::env::var_os(CONFIG_ENV_VAR) {
        Some(path) => load_config_file(path),
        None => Ok(GlobalConfig::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(contents: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        std::fs::write(&path, contents).unwrap();
        (dir, path)
    }

    #[test]
    fn parses_keys_and_comments() {
        let (_d, p) = write("# comment\ntheta = 0.8\nbeam_width=100\nformat = json\n\n");
        let cfg = load_config_file(&p).unwrap();
        assert_eq!(cfg.theta, Some(0.8));
        assert_eq!(cfg.beam_width, Some(100));
        assert_eq!(cfg.format, Some(OutputFormat::Json));
        assert_eq!(cfg.seed, None);
    }

    #[test]
    fn rejects_unknown_key() {
        let (_d, p) = write("bogus = 1\n");
        assert!(matches!(
            load_config_file(&p),
            Err(ConfigError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_bad_value() {
        let (_d, p) = write("theta = fast\n");
        assert!(load_config_file(&p).is_err());
    }
}
