use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{io_error, CliError};
use crate::record::{ExperimentRecord, Outcome, Provenance, Target, RECORD_SUFFIX};

#[derive(Clone, Debug, Serialize)]
pub struct SummaryEntry {
    /// Relative to the scanned directory, with `/` separators.
    pub path: String,
    pub kind: String,
    pub outcome: Outcome,
    pub provenance: Provenance,
    pub targets: Vec<Target>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub outcome: Outcome,
    pub passed: usize,
    pub failed: usize,
    pub aborted: usize,
    pub records: Vec<SummaryEntry>,
}

fn record_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fn scan(d: &Path, descend: bool, out: &mut Vec<PathBuf>) -> Result<Vec<PathBuf>, CliError> {
        let mut subdirs = Vec::new();
        for entry in fs::read_dir(d).map_err(|e| io_error(d, e))? {
            let p = entry.map_err(|e| io_error(d, e))?.path();
            if p.is_dir() {
                if descend {
                    subdirs.push(p);
                }
            } else if p.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.ends_with(RECORD_SUFFIX)) {
                out.push(p);
            }
        }
        Ok(subdirs)
    }
    let mut out = Vec::new();
    for sub in scan(dir, true, &mut out)? {
        scan(&sub, false, &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn relative(dir: &Path, p: &Path) -> String {
    let rel = p.strip_prefix(dir).unwrap_or(p);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join("/")
}

fn text_table(s: &Summary) -> String {
    let mut t = String::new();
    let _ = writeln!(
        t,
        "overall: {} ({} passed, {} failed, {} aborted)",
        s.outcome.as_str().to_uppercase(),
        s.passed,
        s.failed,
        s.aborted
    );
    for r in &s.records {
        let _ = writeln!(t, "\n[{}] {} ({})", r.outcome.as_str().to_uppercase(), r.kind, r.path);
        let _ = writeln!(t, "  config {} seed {:?} version {}", r.provenance.config_hash, r.provenance.seed, r.provenance.code_version);
        for g in &r.targets {
            let mark = match (g.passed, g.gating) {
                (true, _) => "ok  ",
                (false, true) => "FAIL",
                (false, false) => "info",
            };
            let measured = g.measured.map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"));
            let _ = writeln!(t, "  {mark} {:<52} {:>14}  expected {}  [{}]", g.name, measured, g.expected, g.source);
        }
        for w in &r.warnings {
            let _ = writeln!(t, "  warn {w}");
        }
    }
    t
}

/// Aggregates every record in `dir` and its immediate subdirectories and
/// writes `summary.json` and `summary.txt` into `out`.
pub fn report(dir: &Path, out: &Path) -> Result<(Summary, String), CliError> {
    if !dir.is_dir() {
        return Err(CliError::Usage(format!("{} is not a directory", dir.display())));
    }
    let files = record_files(dir)?;
    if files.is_empty() {
        return Err(CliError::Usage(format!("no *{RECORD_SUFFIX} files in {}", dir.display())));
    }
    let mut bad = Vec::new();
    let mut records = Vec::new();
    for f in &files {
        let parsed = fs::read_to_string(f)
            .map_err(|e| e.to_string())
            .and_then(|s| serde_json::from_str::<ExperimentRecord>(&s).map_err(|e| e.to_string()));
        match parsed {
            Ok(r) => records.push(SummaryEntry {
                path: relative(dir, f),
                kind: r.kind,
                outcome: r.outcome,
                provenance: r.provenance,
                targets: r.targets,
                warnings: r.warnings,
            }),
            Err(e) => bad.push(format!("{}: {e}", relative(dir, f))),
        }
    }
    if !bad.is_empty() {
        return Err(CliError::Usage(format!("unreadable records:\n  - {}", bad.join("\n  - "))));
    }
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
    let summary = Summary {
        outcome: if records.iter().all(|r| r.outcome == Outcome::Pass) {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        aborted: count(Outcome::Abort),
        records,
    };
    let text = text_table(&summary);
    fs::create_dir_all(out).map_err(|e| io_error(out, e))?;
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    for (name, body) in [("summary.json", &json), ("summary.txt", &text)] {
        let p = out.join(name);
        fs::write(&p, body).map_err(|e| io_error(&p, e))?;
    }
    Ok((summary, text))
}
