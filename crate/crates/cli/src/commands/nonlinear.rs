use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use radhydro::sim::{
    balance_convergence, linear_limit_error, read_checkpoint, run, run_from, step_convergence, write_checkpoint,
    RunOutcome, SimConfig,
};

use super::{io_error, CliError, Emission, Options};
use crate::config::RunOptions;
use crate::record::{num, CsvTable, ExperimentRecord, Outcome, Provenance, Target};
use crate::svg::{Plot, Scale, Series};

const EXISTENCE: &str = "global-existence-theorem";
const ENERGY: &str = "energy-functional-equivalence";
const GAP: &str = "torus-spectral-gap";
const SCHEME: &str = "time-integrator-order";

pub const LINEAR_LIMIT_TOL: f64 = 1e-6;
pub const ORDER_TOL: f64 = 0.15;
pub const LATE_TIME_TOL: f64 = 0.15;

const MONITOR_HEADER: &str = "step,t,h2_norm,grad0,grad1,grad2,high_functional,low_functional,n_functional,\
energy,dissipation,forcing,min_density,relaxation_norm";

/// Small companion problem for the spot checks.
fn companion(c: &SimConfig) -> SimConfig {
    SimConfig {
        n: 16,
        box_len: 2.0,
        dt: 0.01,
        t_end: 0.4,
        amplitude: 0.1,
        monitor_every: 1,
        transient: 0.0,
        integrator: c.integrator,
        seed: c.seed,
        ..SimConfig::default()
    }
}

/// `err(dt)/err(dt/2)` against a `dt/8` reference for a method of order `p`.
fn expected_ratio(p: u32) -> f64 {
    let q = |k: f64| k.powi(-(p as i32));
    (1.0 - q(8.0)) / (q(2.0) - q(8.0))
}

fn spot_checks(c: &SimConfig, targets: &mut Vec<Target>) -> Result<serde_json::Value, CliError> {
    let small = companion(c);
    let linear = linear_limit_error(&SimConfig { t_end: 1.0, ..small.clone() }, 1e-8, 100)?;
    targets.push(Target::new(
        "linear limit at amplitude 1e-8 over 100 steps",
        SCHEME,
        format!("< {LINEAR_LIMIT_TOL:e}"),
        Some(linear),
        linear < LINEAR_LIMIT_TOL,
    ));
    let order = c.integrator.order();
    let step = step_convergence(&small)?;
    let want = expected_ratio(order);
    targets.push(Target::new(
        "step self-convergence ratio",
        SCHEME,
        format!("{want:.3} within {:.0}%", 100.0 * ORDER_TOL),
        Some(step.ratio()),
        (step.ratio() / want - 1.0).abs() <= ORDER_TOL,
    ));
    let balance = balance_convergence(&small)?;
    let want_b = 2f64.powi(order as i32);
    targets.push(Target::new(
        "balance residual convergence ratio",
        SCHEME,
        format!("{want_b} within {:.0}%", 100.0 * ORDER_TOL),
        Some(balance.ratio()),
        (balance.ratio() / want_b - 1.0).abs() <= ORDER_TOL,
    ));
    Ok(serde_json::json!({
        "companion": small,
        "linear_limit_error": linear,
        "step_convergence": step,
        "balance_convergence": balance,
    }))
}

fn restart(c: &SimConfig, path: &Path) -> Result<RunOutcome, CliError> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let ck = read_checkpoint(BufReader::new(file))?;
    if ck.n != c.n || ck.box_len != c.box_len {
        return Err(CliError::Usage(format!(
            "checkpoint grid (n = {}, L = {}) does not match the config (n = {}, L = {})",
            ck.n, ck.box_len, c.n, c.box_len
        )));
    }
    let remaining = c.t_end - ck.time;
    let steps = (remaining / c.dt).round();
    if steps < 0.0 || (remaining / c.dt - steps).abs() > 1e-9 * steps.max(1.0) {
        return Err(CliError::Usage(format!(
            "t_end = {} is not a whole number of steps after the checkpoint time {}",
            c.t_end, ck.time
        )));
    }
    let rest = SimConfig {
        t_end: steps * c.dt,
        ..c.clone()
    };
    Ok(run_from(&rest, &c.grid()?, ck.state, ck.time)?)
}

/// Full nonlinear run with monitors, optional restart and spot checks.
pub fn nonlinear_run(
    c: &SimConfig,
    run_opts: &RunOptions,
    provenance: Provenance,
    opts: &Options,
) -> Result<Emission, CliError> {
    let out = match &run_opts.restart_from {
        Some(path) => restart(c, path)?,
        None => run(c)?,
    };
    let rec = &out.record;
    let k = &rec.constants;
    let mut targets = vec![Target::new(
        "run completes inside the admissible tube",
        EXISTENCE,
        "no abort",
        Some(rec.steps_taken as f64),
        !rec.aborted(),
    )];
    // without a single sample the band and floor are vacuous
    let sampled = |t: Target| {
        if rec.monitors.samples.is_empty() {
            Target { measured: None, ..t }.informational()
        } else {
            t
        }
    };
    let (lo, hi) = k.high_band;
    let worst = if 1.0 - lo > hi - 1.0 { lo } else { hi };
    targets.push(sampled(Target::new(
        "high-order functional over |D^2 U|^2",
        ENERGY,
        "within [0.8, 1.2] at every sample",
        Some(worst),
        rec.high_band_holds(),
    )));
    targets.push(sampled(Target::new(
        "min(1 + rho)",
        EXISTENCE,
        format!(">= {}", c.density_floor),
        Some(k.min_density),
        rec.floor_held(),
    )));
    let monotone = Target::new(
        "largest relative H2 increase after the transient",
        ENERGY,
        "<= 0",
        k.h2_max_increase,
        k.h2_max_increase.is_some_and(|v| v <= 1e-12),
    );
    targets.push(match k.h2_max_increase {
        Some(_) => monotone,
        None => monotone.informational(),
    });
    if let Some(fit) = &k.late_time {
        targets.push(
            Target::new(
                "late-time slope of the dominant lowest-shell component",
                GAP,
                format!("within {:.0}% of the gap {:.5}", 100.0 * LATE_TIME_TOL, fit.gap),
                Some(fit.dominant_relative_error()),
                fit.dominant_relative_error() <= LATE_TIME_TOL,
            )
            .informational(),
        );
    }
    let checks = if run_opts.spot_checks && !rec.aborted() {
        spot_checks(c, &mut targets)?
    } else {
        serde_json::Value::Null
    };

    if let Some(name) = &run_opts.checkpoint {
        std::fs::create_dir_all(&opts.out).map_err(|e| io_error(&opts.out, e))?;
        let path = opts.out.join(name);
        let file = File::create(&path).map_err(|e| io_error(&path, e))?;
        write_checkpoint(BufWriter::new(file), &c.grid()?, out.time, &out.state)?;
    }

    let mut notes = Vec::new();
    if let Some(a) = &rec.abort {
        notes.push(format!("aborted at step {} (t = {}): {}", a.step, a.time, a.reason));
    }
    let mut record = ExperimentRecord {
        kind: "nonlinear-run".into(),
        provenance,
        outcome: Outcome::Fail,
        targets,
        warnings: rec.warnings.clone(),
        notes,
        details: serde_json::json!({
            "final_time": out.time,
            "steps_taken": rec.steps_taken,
            "constants": k,
            "abort": rec.abort,
            "spot_checks": checks,
        }),
    };
    if rec.aborted() {
        record.outcome = Outcome::Abort;
    }

    let mut csv = CsvTable::new(&record.provenance.config_hash, MONITOR_HEADER);
    for s in &rec.monitors.samples {
        let mut row = vec![s.step.to_string(), num(s.t), num(s.h2_norm)];
        row.extend(s.grad_norms.iter().map(|v| num(*v)));
        row.extend(
            [
                s.high_functional,
                s.low_functional,
                s.n_functional,
                s.balance.energy,
                s.balance.dissipation,
                s.balance.forcing,
                s.min_density,
                s.relaxation_norm,
            ]
            .map(num),
        );
        csv.row(&row);
    }
    let col = |f: fn(&radhydro::sim::MonitorSample) -> f64| rec.monitors.column(f);
    let plot = Plot {
        title: "nonlinear run".into(),
        x_label: "t".into(),
        y_label: "norm".into(),
        x_scale: Scale::Linear,
        y_scale: Scale::Log,
        series: vec![
            Series {
                label: "H2 norm".into(),
                points: col(|s| s.h2_norm),
            },
            Series {
                label: "|4 theta - eta|".into(),
                points: col(|s| s.relaxation_norm),
            },
        ],
    };
    Ok(Emission {
        record,
        csv: csv.into_string(),
        json: serde_json::to_value(rec).expect("run records serialize"),
        plot,
    })
}
