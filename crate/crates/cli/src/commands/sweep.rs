use radhydro::linear::{hurwitz_determinants, hurwitz_sweep, HurwitzReport, Verdict};

use super::{CliError, Emission};
use crate::config::SweepConfig;
use crate::record::{CsvTable, ExperimentRecord, Outcome, Provenance, Target};
use crate::svg::{Plot, Scale, Series};

const SOURCE: &str = "routh-hurwitz-stability";

/// Routh–Hurwitz certificate at every sampled frequency.
pub fn spectral_sweep(cfg: &SweepConfig, provenance: Provenance) -> Result<Emission, CliError> {
    let mut reports: Vec<HurwitzReport> = Vec::new();
    if cfg.include_zero || cfg.zero_only() {
        reports.push(hurwitz_determinants(0.0)?);
    }
    if !cfg.zero_only() {
        reports.extend(hurwitz_sweep(cfg.xi_min, cfg.xi_max, cfg.points)?);
    }

    let positive: Vec<&HurwitzReport> = reports.iter().filter(|r| r.xi_mag > 0.0).collect();
    let zero = reports.iter().find(|r| r.xi_mag == 0.0);
    let mut targets = Vec::new();
    let mut notes = Vec::new();
    if !positive.is_empty() {
        let stable = positive.iter().filter(|r| r.verdict == Verdict::Stable).count();
        targets.push(Target::new(
            "minors positive for xi > 0",
            SOURCE,
            format!("all {} sampled frequencies stable", positive.len()),
            Some(stable as f64),
            stable == positive.len(),
        ));
        let gap = positive.iter().map(|r| r.kappa_gap).fold(f64::INFINITY, f64::min);
        targets.push(
            Target::new("smallest min Re lambda over the sweep", SOURCE, "> 0", Some(gap), gap > 0.0).informational(),
        );
    }
    if let Some(z) = zero {
        targets.push(Target::new(
            "zero frequency",
            SOURCE,
            "marginal",
            Some(z.kappa_gap),
            z.verdict == Verdict::Marginal,
        ));
        notes.push("xi = 0 is marginal: the symbol has a zero eigenvalue there".into());
    }
    let consistent = reports.iter().filter(|r| r.eigen_consistent).count();
    targets.push(Target::new(
        "minor verdict agrees with eigenvalues",
        SOURCE,
        format!("all {} samples", reports.len()),
        Some(consistent as f64),
        consistent == reports.len(),
    ));

    let mut record = ExperimentRecord {
        kind: "spectral-sweep".into(),
        provenance,
        outcome: Outcome::Fail,
        targets,
        warnings: Vec::new(),
        notes,
        details: serde_json::json!({
            "samples": reports.len(),
            "xi_range": [cfg.xi_min, cfg.xi_max],
        }),
    };
    record.decide(false);

    let mut csv = CsvTable::new(&record.provenance.config_hash, HurwitzReport::CSV_HEADER);
    for r in &reports {
        csv.push_line(&r.csv_row());
    }
    let plot = Plot {
        title: "smallest real part of the symbol spectrum".into(),
        x_label: "|xi|".into(),
        y_label: "min Re lambda".into(),
        x_scale: Scale::Log,
        y_scale: Scale::Log,
        series: vec![Series {
            label: "min Re lambda".into(),
            points: reports.iter().map(|r| (r.xi_mag, r.kappa_gap)).collect(),
        }],
    };
    Ok(Emission {
        record,
        csv: csv.into_string(),
        json: serde_json::to_value(&reports).expect("reports serialize"),
        plot,
    })
}
