//! Experiment configuration files.
//!
//! A config is a TOML document with one optional table per experiment kind:
//!
//! ```toml
//! kind = "linear-decay"          # optional; must match the subcommand
//!
//! [spectral_sweep]
//! xi_min = 1e-3
//! xi_max = 1e3
//! points = 200
//! include_zero = true
//!
//! [linear_decay]
//! rho = { kind = "gaussian", amplitude = 1.0 }
//! fit_window = [1e2, 1e4]
//! time_grid = { lo = 1e-2, hi = 1e4, per_decade = 25 }
//!
//! [nonlinear_run]
//! n = 32
//! t_end = 50.0
//! spot_checks = true
//! checkpoint = "final.chk"
//! ```
//!
//! Missing tables and keys take their defaults. Every problem found is
//! reported, not just the first.

use std::fmt;
use std::path::{Path, PathBuf};

use radhydro::decay::{log_time_grid, DecayExperimentConfig};
use radhydro::sim::SimConfig;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    SpectralSweep,
    LinearDecay,
    NonlinearRun,
    Report,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::SpectralSweep => "spectral-sweep",
            Kind::LinearDecay => "linear-decay",
            Kind::NonlinearRun => "nonlinear-run",
            Kind::Report => "report",
        }
    }

    fn section(self) -> &'static str {
        match self {
            Kind::SpectralSweep => "spectral_sweep",
            Kind::LinearDecay => "linear_decay",
            Kind::NonlinearRun => "nonlinear_run",
            Kind::Report => "report",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Frequencies at which the characteristic polynomial is certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub xi_min: f64,
    pub xi_max: f64,
    /// Log-spaced samples on `[xi_min, xi_max]`.
    pub points: usize,
    /// Also evaluate `ξ = 0`.
    pub include_zero: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            xi_min: 1e-3,
            xi_max: 1e3,
            points: 200,
            include_zero: true,
        }
    }
}

impl SweepConfig {
    /// Only `ξ = 0` is requested.
    pub fn zero_only(&self) -> bool {
        self.xi_min == 0.0 && self.xi_max == 0.0
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.xi_min >= 0.0 && self.xi_max.is_finite()) {
            out.push(format!("xi range must be finite and >= 0, got [{}, {}]", self.xi_min, self.xi_max));
        } else if self.xi_min > self.xi_max {
            out.push(format!("xi_min = {} exceeds xi_max = {}", self.xi_min, self.xi_max));
        } else if self.xi_min == 0.0 && self.xi_max > 0.0 {
            out.push("xi_min must be positive for a log sweep; use include_zero for xi = 0".into());
        }
        if self.points == 0 && !self.zero_only() {
            out.push("points must be at least 1".into());
        }
        out
    }
}

/// `0` followed by log-spaced points; shorthand for an explicit `times` list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub lo: f64,
    pub hi: f64,
    pub per_decade: usize,
}

impl TimeGrid {
    fn violations(&self) -> Vec<String> {
        if self.lo > 0.0 && self.hi > self.lo && self.hi.is_finite() && self.per_decade > 0 {
            Vec::new()
        } else {
            vec![format!(
                "time_grid needs 0 < lo < hi and per_decade > 0, got lo = {}, hi = {}, per_decade = {}",
                self.lo, self.hi, self.per_decade
            )]
        }
    }
}

/// Harness-level options of a nonlinear run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Linear-limit and convergence-order checks on a small companion grid.
    pub spot_checks: bool,
    /// File name, inside the output directory, for the final state.
    pub checkpoint: Option<String>,
    /// Checkpoint to continue from; `t_end` stays the absolute end time.
    pub restart_from: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: Option<Kind>,
    pub spectral_sweep: SweepConfig,
    pub linear_decay: DecayExperimentConfig,
    pub nonlinear_run: SimConfig,
    pub run_options: RunOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            kind: None,
            spectral_sweep: SweepConfig::default(),
            linear_decay: DecayExperimentConfig::default(),
            nonlinear_run: SimConfig::default(),
            run_options: RunOptions {
                spot_checks: true,
                ..RunOptions::default()
            },
        }
    }
}

/// Every problem found in a config file.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

fn section<T: DeserializeOwned + Default>(
    table: Option<Table>,
    name: &str,
    errors: &mut Vec<String>,
) -> T {
    match table {
        None => T::default(),
        Some(t) => T::deserialize(Value::Table(t)).unwrap_or_else(|e| {
            errors.push(format!("[{name}]: {}", e.message()));
            T::default()
        }),
    }
}

fn take_table(root: &mut Table, name: &str, errors: &mut Vec<String>) -> Option<Table> {
    match root.remove(name) {
        None => None,
        Some(Value::Table(t)) => Some(t),
        Some(other) => {
            errors.push(format!("`{name}` must be a table, got {}", other.type_str()));
            None
        }
    }
}

fn take<T: DeserializeOwned>(table: &mut Table, section: &str, key: &str, errors: &mut Vec<String>) -> Option<T> {
    let v = table.remove(key)?;
    T::deserialize(v)
        .map_err(|e| errors.push(format!("[{section}] {key}: {}", e.message())))
        .ok()
}

impl ExperimentConfig {
    /// Parses and validates, collecting every problem.
    pub fn parse(text: &str) -> Result<Self, ConfigErrors> {
        let mut root: Table = text.parse().map_err(|e: toml::de::Error| ConfigErrors(vec![e.to_string()]))?;
        let mut errors = Vec::new();

        let kind = take(&mut root, "top level", "kind", &mut errors);
        let sweep = section(take_table(&mut root, "spectral_sweep", &mut errors), "spectral_sweep", &mut errors);

        let mut decay_table = take_table(&mut root, "linear_decay", &mut errors);
        let grid: Option<TimeGrid> = decay_table
            .as_mut()
            .and_then(|t| take(t, "linear_decay", "time_grid", &mut errors));
        if grid.is_some() && decay_table.as_ref().is_some_and(|t| t.contains_key("times")) {
            errors.push("[linear_decay]: give either `times` or `time_grid`, not both".into());
        }
        let mut linear_decay: DecayExperimentConfig = section(decay_table, "linear_decay", &mut errors);
        if let Some(g) = grid {
            let v = g.violations();
            if v.is_empty() {
                linear_decay.times = log_time_grid(g.lo, g.hi, g.per_decade);
            }
            errors.extend(v.into_iter().map(|e| format!("[linear_decay] {e}")));
        }

        let mut run_table = take_table(&mut root, "nonlinear_run", &mut errors);
        let mut run_options = RunOptions {
            spot_checks: true,
            ..RunOptions::default()
        };
        if let Some(t) = run_table.as_mut() {
            if let Some(v) = take(t, "nonlinear_run", "spot_checks", &mut errors) {
                run_options.spot_checks = v;
            }
            run_options.checkpoint = take(t, "nonlinear_run", "checkpoint", &mut errors);
            run_options.restart_from = take(t, "nonlinear_run", "restart_from", &mut errors);
        }
        let nonlinear_run = section(run_table, "nonlinear_run", &mut errors);

        for key in root.keys() {
            errors.push(format!("unknown top-level key `{key}`"));
        }

        let config = Self {
            kind,
            spectral_sweep: sweep,
            linear_decay,
            nonlinear_run,
            run_options,
        };
        errors.extend(config.violations());
        if errors.is_empty() {
            Ok(config)
        } else {
            Err(ConfigErrors(errors))
        }
    }

    pub fn load(path: &Path) -> Result<Self, ConfigErrors> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigErrors(vec![format!("cannot read {}: {e}", path.display())]))?;
        Self::parse(&text)
    }

    /// Semantic problems of every section.
    pub fn violations(&self) -> Vec<String> {
        fn tag(s: &'static str, v: Vec<String>) -> impl Iterator<Item = String> {
            v.into_iter().map(move |e| format!("[{s}] {e}"))
        }
        let mut out: Vec<String> = tag("spectral_sweep", self.spectral_sweep.violations()).collect();
        out.extend(tag("linear_decay", self.linear_decay.violations()));
        out.extend(tag("nonlinear_run", self.nonlinear_run.violations()));
        if let Some(name) = &self.run_options.checkpoint {
            if name.is_empty() || Path::new(name).components().count() != 1 {
                out.push(format!("[nonlinear_run] checkpoint must be a plain file name, got {name:?}"));
            }
        }
        out
    }

    /// Rejects a `kind` that names a different experiment.
    pub fn check_kind(&self, kind: Kind) -> Result<(), ConfigErrors> {
        match self.kind {
            Some(k) if k != kind => Err(ConfigErrors(vec![format!(
                "config is for `{k}` but the `{kind}` subcommand was invoked"
            )])),
            _ => Ok(()),
        }
    }

    /// Canonical JSON of the section a subcommand consumes.
    pub fn canonical(&self, kind: Kind) -> serde_json::Value {
        let body = match kind {
            Kind::SpectralSweep => serde_json::to_value(&self.spectral_sweep),
            Kind::LinearDecay => serde_json::to_value(&self.linear_decay),
            Kind::NonlinearRun => Ok(serde_json::json!({
                "sim": self.nonlinear_run,
                "options": self.run_options,
            })),
            Kind::Report => Ok(serde_json::Value::Null),
        }
        .expect("configs serialize");
        serde_json::json!({ "kind": kind.as_str(), kind.section(): body })
    }
}
