//! Run configuration: a single JSON document carrying the command, its
//! parameters, and execution options; command-line flags override the
//! file values.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::invalid(format!(
                "unknown format {other:?} (tsv|json)"
            ))),
        }
    }
}

/// The configuration document. `parameters` stays schemaless here; each
/// command validates the keys it needs.
#[derive(Debug, Clone, Deserialize, Default)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub parameters: Value,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub format: Option<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid(format!("cannot read config {path:?}: {e}")))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::invalid(format!("malformed config {path:?}: {e}")))
    }
}

/// Typed access into the parameter map with uniform diagnostics.
pub struct Params<'a>(pub &'a Value);

impl Params<'_> {
    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn usize_opt(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| {
                CliError::invalid(format!("parameter {key} must be a non-negative integer"))
            }),
        }
    }

    pub fn i64_opt(&self, key: &str) -> Result<Option<i64>, CliError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_i64()
                .map(Some)
                .ok_or_else(|| CliError::invalid(format!("parameter {key} must be an integer"))),
        }
    }

    pub fn required_usize(&self, key: &str) -> Result<usize, CliError> {
        self.usize_opt(key)?
            .ok_or_else(|| CliError::invalid(format!("missing required parameter {key}")))
    }

    pub fn required_i64(&self, key: &str) -> Result<i64, CliError> {
        self.i64_opt(key)?
            .ok_or_else(|| CliError::invalid(format!("missing required parameter {key}")))
    }

    pub fn string_opt(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(CliError::invalid(format!(
                "parameter {key} must be a string"
            ))),
        }
    }

    /// Row-major integer matrix.
    pub fn matrix_opt(&self, key: &str) -> Result<Option<Vec<Vec<i64>>>, CliError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => {
                let rows = v.as_array().ok_or_else(|| {
                    CliError::invalid(format!("parameter {key} must be an array of rows"))
                })?;
                let mut out = Vec::with_capacity(rows.len());
                for row in rows {
                    let cells = row.as_array().ok_or_else(|| {
                        CliError::invalid(format!("parameter {key}: rows must be arrays"))
                    })?;
                    let mut r = Vec::with_capacity(cells.len());
                    for c in cells {
                        r.push(c.as_i64().ok_or_else(|| {
                            CliError::invalid(format!("parameter {key}: entries must be integers"))
                        })?);
                    }
                    out.push(r);
                }
                if out.is_empty() || out.iter().any(|r| r.len() != out[0].len()) {
                    return Err(CliError::invalid(format!(
                        "parameter {key}: ragged or empty matrix"
                    )));
                }
                Ok(Some(out))
            }
        }
    }

    pub fn bits_opt(&self, key: &str) -> Result<Option<Vec<u8>>, CliError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => {
                let arr = v.as_array().ok_or_else(|| {
                    CliError::invalid(format!("parameter {key} must be an array of bits"))
                })?;
                let mut out = Vec::with_capacity(arr.len());
                for c in arr {
                    match c.as_u64() {
                        Some(b @ (0 | 1)) => out.push(b as u8),
                        _ => {
                            return Err(CliError::invalid(format!(
                                "parameter {key}: entries must be 0 or 1"
                            )))
                        }
                    }
                }
                Ok(Some(out))
            }
        }
    }
}
