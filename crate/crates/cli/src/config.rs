//! Flat `key=value` scheme config files.
//!
//! Recognized keys: `kind` (`p1`/`p2`/`p3`), `x` (rational), `a` and `n`
//! (sequence descriptions: expression, constant, or comma-separated list).
//! `#` starts a comment; blank lines are ignored. `a` is required for p1/p3
//! and rejected for p2, which does not use it.

use nestrad::scheme::{SchemeError, SchemeInstance};
use nestrad::seqspec::SequenceSpec;
use nestrad::{BigRational, SchemeKind};
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("config line {line}: expected `key=value`")]
    MalformedLine { line: usize },
    #[error("config line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("config: missing key `{key}`")]
    MissingKey { key: &'static str },
    #[error("config: invalid value for key `{key}`: {message}")]
    InvalidValue { key: &'static str, message: String },
}

pub fn load(path: &Path) -> Result<SchemeInstance, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    build(&parse_pairs(&text)?)
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut pairs = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or(ConfigError::MalformedLine { line })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !matches!(key.as_str(), "kind" | "x" | "a" | "n") {
            return Err(ConfigError::UnknownKey { line, key });
        }
        if pairs.insert(key.clone(), value).is_some() {
            return Err(ConfigError::DuplicateKey { line, key });
        }
    }
    Ok(pairs)
}

fn build(pairs: &BTreeMap<String, String>) -> Result<SchemeInstance, ConfigError> {
    let kind = match required(pairs, "kind")?.as_str() {
        "p1" => SchemeKind::P1,
        "p2" => SchemeKind::P2,
        "p3" => SchemeKind::P3,
        other => {
            return Err(ConfigError::InvalidValue {
                key: "kind",
                message: format!("`{other}` is not one of p1, p2, p3"),
            })
        }
    };
    let x =
        BigRational::from_str(required(pairs, "x")?).map_err(|_| ConfigError::InvalidValue {
            key: "x",
            message: "expected a rational like `3` or `7/2`".to_string(),
        })?;
    let n_seq = sequence(pairs, "n")?;
    let a_seq = match kind {
        SchemeKind::P2 => {
            if pairs.contains_key("a") {
                return Err(ConfigError::InvalidValue {
                    key: "a",
                    message: "kind p2 does not use an `a` sequence".to_string(),
                });
            }
            SequenceSpec::Constant(BigRational::from_integer(0.into()))
        }
        SchemeKind::P1 | SchemeKind::P3 => sequence(pairs, "a")?,
    };
    SchemeInstance::new(kind, x, a_seq, n_seq).map_err(|err| match err {
        SchemeError::NegativeSeed => ConfigError::InvalidValue {
            key: "x",
            message: "kind p3 requires a nonnegative seed".to_string(),
        },
        other => ConfigError::InvalidValue {
            key: "kind",
            message: other.to_string(),
        },
    })
}

fn required<'a>(
    pairs: &'a BTreeMap<String, String>,
    key: &'static str,
) -> Result<&'a String, ConfigError> {
    pairs.get(key).ok_or(ConfigError::MissingKey { key })
}

fn sequence(
    pairs: &BTreeMap<String, String>,
    key: &'static str,
) -> Result<SequenceSpec, ConfigError> {
    SequenceSpec::parse(required(pairs, key)?).map_err(|err| ConfigError::InvalidValue {
        key,
        message: err.to_string(),
    })
}
