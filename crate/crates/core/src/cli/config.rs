use std::f64::consts::TAU;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use super::CliError;

/// Replaces every numeric `<name>_hz` entry by `<name> = 2 pi value`.
pub fn normalize_hz(v: Value) -> Result<Value, CliError> {
    Ok(match v {
        Value::Object(map) => {
            let mut out = Map::new();
            for (k, v) in map {
                let v = normalize_hz(v)?;
                match k.strip_suffix("_hz") {
                    Some(base) => {
                        let x = v
                            .as_f64()
                            .ok_or_else(|| CliError::Config(format!("`{k}` must be a number")))?;
                        if out.contains_key(base) {
                            return Err(CliError::Config(format!("both `{base}` and `{k}` given")));
                        }
                        out.insert(base.to_string(), Value::from(TAU * x));
                    }
                    None => {
                        if out.contains_key(&k) {
                            return Err(CliError::Config(format!("both `{k}` and `{k}_hz` given")));
                        }
                        out.insert(k, v);
                    }
                }
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(normalize_hz).collect::<Result<_, _>>()?),
        other => other,
    })
}

/// Reads a JSON config (or `{}` when absent) into `T`.
pub fn load<T: DeserializeOwned>(path: Option<&Path>) -> Result<T, CliError> {
    let raw = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
        None => "{}".to_string(),
    };
    let v: Value = serde_json::from_str(&raw).map_err(|e| CliError::Config(format!("invalid JSON: {e}")))?;
    parse(v)
}

pub fn parse<T: DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(normalize_hz(v)?).map_err(|e| CliError::Config(e.to_string()))
}

/// SHA-256 of the command name and the fully resolved config.
pub fn config_hash<T: Serialize>(command: &str, cfg: &T) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0u8]);
    h.update(serde_json::to_vec(cfg).expect("config serializes"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// Sampled axis from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Sweep {
    pub fn linear(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points, scale: Scale::Linear }
    }

    pub fn log(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points, scale: Scale::Log }
    }

    pub fn values(&self, name: &str) -> Result<Vec<f64>, CliError> {
        if self.points < 2 {
            return Err(CliError::Config(format!("sweep `{name}` needs at least 2 points")));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.max < self.min {
            return Err(CliError::Config(format!("sweep `{name}` needs finite min <= max")));
        }
        let n = (self.points - 1) as f64;
        Ok(match self.scale {
            Scale::Linear => (0..self.points).map(|k| self.min + (self.max - self.min) * k as f64 / n).collect(),
            Scale::Log => {
                if self.min <= 0.0 {
                    return Err(CliError::Config(format!("log sweep `{name}` needs min > 0")));
                }
                let (a, b) = (self.min.ln(), self.max.ln());
                (0..self.points)
                    .map(|k| match k {
                        0 => self.min,
                        k if k == self.points - 1 => self.max,
                        k => (a + (b - a) * k as f64 / n).exp(),
                    })
                    .collect()
            }
        })
    }
}
