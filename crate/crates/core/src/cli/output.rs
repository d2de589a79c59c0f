use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::CliError;

/// Numeric table written as CSV with a config-hash comment line.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    pub fn to_csv(&self, config_hash: &str) -> String {
        let mut s = format!("# config_hash={config_hash}\n{}\n", self.columns.join(","));
        for row in &self.rows {
            for (k, x) in row.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                write!(s, "{x:.16e}").expect("write to string");
            }
            s.push('\n');
        }
        s
    }

    pub fn write(&self, dir: &Path, name: &str, config_hash: &str) -> Result<PathBuf, CliError> {
        let path = dir.join(name);
        std::fs::write(&path, self.to_csv(config_hash)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Decides the exit status.
    Check,
    /// Reported only.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub measured: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    /// Relative comparison `|measured - reference| <= tol |reference|`.
    pub fn relative(name: &str, measured: f64, reference: f64, tol: f64, detail: impl Into<String>) -> Self {
        let passed = (measured - reference).abs() <= tol * reference.abs();
        Self { name: name.into(), kind: CheckKind::Check, passed, measured, reference, tolerance: tol, detail: detail.into() }
    }

    /// Absolute comparison `|measured - reference| <= tol`.
    pub fn absolute(name: &str, measured: f64, reference: f64, tol: f64, detail: impl Into<String>) -> Self {
        let passed = (measured - reference).abs() <= tol;
        Self { name: name.into(), kind: CheckKind::Check, passed, measured, reference, tolerance: tol, detail: detail.into() }
    }

    pub fn info(mut self) -> Self {
        self.kind = CheckKind::Info;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub config: Value,
    pub config_hash: String,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_g_z: Option<String>,
    pub checks: Vec<CheckResult>,
    pub outputs: Vec<String>,
    pub passed: bool,
}

impl RunReport {
    pub fn new<T: Serialize>(command: &str, config: &T, config_hash: &str) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: serde_json::to_value(config).expect("config serializes"),
            config_hash: config_hash.into(),
            wall_time_s: 0.0,
            canonical_g_z: None,
            checks: Vec::new(),
            outputs: Vec::new(),
            passed: true,
        }
    }

    pub fn finish(&mut self, started: std::time::Instant) {
        self.wall_time_s = started.elapsed().as_secs_f64();
        self.passed = self.checks.iter().all(|c| c.kind == CheckKind::Info || c.passed);
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.kind == CheckKind::Check && !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn write(&self, dir: &Path, name: &str) -> Result<PathBuf, CliError> {
        let path = dir.join(name);
        let s = serde_json::to_string_pretty(self).expect("report serializes");
        std::fs::write(&path, s + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}
