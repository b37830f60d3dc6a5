//! Persisted experiment records and provenance.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const RECORD_SUFFIX: &str = ".record.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Abort,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Abort => "abort",
        }
    }

    /// 0 pass, 1 failed target, 3 runtime abort.
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Abort => 3,
        }
    }
}

/// One quantitative claim checked by an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub name: String,
    /// Identifier of the result the target comes from.
    pub source: String,
    /// Human-readable statement of what is required.
    pub expected: String,
    pub measured: Option<f64>,
    pub passed: bool,
    /// Informational targets are reported but do not decide the verdict.
    pub gating: bool,
}

impl Target {
    pub fn new(name: &str, source: &str, expected: impl Into<String>, measured: Option<f64>, passed: bool) -> Self {
        Self {
            name: name.into(),
            source: source.into(),
            expected: expected.into(),
            measured,
            passed,
            gating: true,
        }
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// SHA-256 of the canonical JSON of the consumed config section.
    pub config_hash: String,
    pub code_version: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(canonical: &serde_json::Value, seed: Option<u64>) -> Self {
        let bytes = serde_json::to_vec(canonical).expect("json values serialize");
        Self {
            config_hash: format!("{:x}", Sha256::digest(&bytes)),
            code_version: env!("CARGO_PKG_VERSION").into(),
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub kind: String,
    pub provenance: Provenance,
    pub outcome: Outcome,
    pub targets: Vec<Target>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    /// Measured constants and tables specific to the experiment kind.
    pub details: serde_json::Value,
}

impl ExperimentRecord {
    /// Pass iff every gating target passed (and, with `strict`, no warnings).
    pub fn decide(&mut self, strict: bool) {
        if self.outcome == Outcome::Abort {
            return;
        }
        let ok = self.targets.iter().filter(|t| t.gating).all(|t| t.passed);
        self.outcome = if ok && !(strict && !self.warnings.is_empty()) {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
    }

    pub fn file_name(&self) -> String {
        format!("{}{RECORD_SUFFIX}", self.kind)
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join(self.file_name());
        let mut text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}

/// Comma-separated table whose first line carries the config hash.
pub struct CsvTable {
    text: String,
}

impl CsvTable {
    pub fn new(hash: &str, header: &str) -> Self {
        Self {
            text: format!("# config_hash={hash}\n{header}\n"),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn push_line(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Shortest round-trip representation.
pub fn num(v: f64) -> String {
    format!("{v:e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = Provenance::new(&serde_json::json!({"x": 1.0}), None);
        let b = Provenance::new(&serde_json::json!({"x": 1.0}), None);
        let c = Provenance::new(&serde_json::json!({"x": 2.0}), None);
        assert_eq!(a, b);
        assert_ne!(a.config_hash, c.config_hash);
        assert_eq!(a.config_hash.len(), 64);
    }

    #[test]
    fn verdict_ignores_informational_targets() {
        let mut r = ExperimentRecord {
            kind: "k".into(),
            provenance: Provenance::new(&serde_json::Value::Null, None),
            outcome: Outcome::Fail,
            targets: vec![
                Target::new("a", "s", "x", Some(1.0), true),
                Target::new("b", "s", "x", None, false).informational(),
            ],
            warnings: vec!["w".into()],
            notes: vec![],
            details: serde_json::Value::Null,
        };
        r.decide(false);
        assert_eq!(r.outcome, Outcome::Pass);
        r.decide(true);
        assert_eq!(r.outcome, Outcome::Fail);
        r.outcome = Outcome::Abort;
        r.decide(false);
        assert_eq!(r.outcome, Outcome::Abort);
    }
}
