use serde::{Deserialize, Serialize};

use super::config::{stability_bound, SimConfig};
use super::energy::{balance_residual, balance_terms, energy_functionals, BalanceTerms};
use super::init::random_initial_state;
use super::integrator::Stepper;
use crate::fourier::{sobolev_norm, ScalarField, SpectralGrid};
use crate::linear::{fit_log_linear, full_eigenvalues, min_real_part};
use crate::model::{diagonalize, nonlinear_terms, ModelParameters, PerturbationState, COMPONENTS};
use crate::{Error, Result};

/// Monitors recorded at one sampled time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonitorSample {
    pub step: usize,
    pub t: f64,
    /// `‖∇^m(ρ, u, θ, η)‖` for `m = 0, 1, 2`.
    pub grad_norms: [f64; 3],
    pub h2_norm: f64,
    pub high_functional: f64,
    pub low_functional: f64,
    /// Running `sup ‖U‖²_{H²} + ∫(‖∇ρ‖²_{H¹} + ‖∇(u,θ,η)‖²_{H²} + ‖4θ−η‖²_{H²})`.
    pub n_functional: f64,
    pub balance: BalanceTerms,
    pub min_density: f64,
    /// `‖4θ − η‖`
    pub relaxation_norm: f64,
    /// `L²` norm of each of `(ρ, u₁, u₂, u₃, θ, η)`.
    pub component_norms: [f64; 6],
    /// The same restricted to the lowest nonzero shell `|ξ| = 1/L`.
    pub shell_norms: [f64; 6],
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MonitorSeries {
    pub samples: Vec<MonitorSample>,
}

impl MonitorSeries {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn column(&self, f: impl Fn(&MonitorSample) -> f64) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.t, f(s))).collect()
    }

    pub fn all_finite(&self) -> bool {
        self.samples.iter().all(|s| {
            s.grad_norms.iter().chain(&s.component_norms).chain(&s.shell_norms).all(|v| v.is_finite())
                && [s.h2_norm, s.high_functional, s.low_functional, s.n_functional, s.min_density]
                    .iter()
                    .all(|v| v.is_finite())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbortInfo {
    pub step: usize,
    pub time: f64,
    pub reason: String,
    /// `min(1+ρ)` of the offending state, when it could be evaluated.
    pub min_density: f64,
    pub max_coefficient: f64,
}

/// Constants measured on a finished (or aborted) run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasuredConstants {
    /// `min`, `max` of `ℋ/‖∇²U‖²`.
    pub high_band: (f64, f64),
    /// `min`, `max` of `ℒ/‖U‖²`.
    pub low_band: (f64, f64),
    /// `sup_t 𝐍(t)/𝐍(0)`.
    pub n_growth: f64,
    pub h2_final_over_initial: f64,
    /// Largest relative increase of `‖U‖_{H²}` between samples after the
    /// transient; `None` with fewer than two such samples.
    pub h2_max_increase: Option<f64>,
    pub min_density: f64,
    /// `max |dE/dt + D − F| / max E`.
    pub balance_residual: f64,
    pub late_time: Option<LateTimeFit>,
}

/// Exponential fits over the second half of the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LateTimeFit {
    pub window: (f64, f64),
    /// `min Re λ` of `A_ξ` at `|ξ| = 1/L`.
    pub gap: f64,
    /// Component carrying the most lowest-shell energy at the final sample.
    pub dominant_component: String,
    /// Decay rate of that component on the lowest shell.
    pub dominant_rate: f64,
    /// Decay rate of `‖U‖_{L²}`.
    pub total_rate: f64,
    /// Decay rate of `‖4θ − η‖`.
    pub relaxation_rate: f64,
    /// Smallest decay rate among the component norms.
    pub slowest_component_rate: f64,
}

impl LateTimeFit {
    pub fn dominant_relative_error(&self) -> f64 {
        (self.dominant_rate - self.gap).abs() / self.gap
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config: SimConfig,
    pub initial_time: f64,
    pub steps_taken: usize,
    pub monitors: MonitorSeries,
    pub abort: Option<AbortInfo>,
    pub warnings: Vec<String>,
    pub constants: MeasuredConstants,
}

impl RunRecord {
    pub fn aborted(&self) -> bool {
        self.abort.is_some()
    }

    /// `ℋ/‖∇²U‖² ∈ [0.8, 1.2]` at every sample.
    pub fn high_band_holds(&self) -> bool {
        let (lo, hi) = self.constants.high_band;
        lo >= 0.8 && hi <= 1.2
    }

    pub fn floor_held(&self) -> bool {
        self.constants.min_density >= self.config.density_floor
    }
}

/// Record plus the last admissible state.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub state: PerturbationState,
    pub time: f64,
}

fn nonlinear_part(
    grid: &SpectralGrid,
    s: &PerturbationState,
    config: &SimConfig,
) -> Result<PerturbationState> {
    if config.linear_only {
        return Ok(PerturbationState::zeros(grid));
    }
    Ok(nonlinear_terms(grid, s, &ModelParameters::default(), config.density_floor)?.into_state())
}

fn lowest_shell(grid: &SpectralGrid, f: &ScalarField) -> f64 {
    let k2 = 1.0 / (grid.box_len() * grid.box_len());
    let s: f64 = f
        .coeffs
        .iter()
        .zip(grid.kmag2())
        .filter(|(_, &q)| (q - k2).abs() <= 1e-12 * k2)
        .map(|(c, _)| c.norm_sqr())
        .sum();
    (grid.volume() * s).sqrt()
}

/// `‖∇ρ‖²_{H¹} + ‖∇(u,θ,η)‖²_{H²} + ‖4θ−η‖²_{H²}`
fn dissipation_integrand(grid: &SpectralGrid, s: &PerturbationState) -> f64 {
    let e = |f: &ScalarField, m: u32| sobolev_norm(grid, f, m).powi(2);
    let g = diagonalize(&s.theta, &s.eta).g_var;
    let mut total = e(&s.rho, 1) + e(&s.rho, 2);
    for c in [&s.vel.0[0], &s.vel.0[1], &s.vel.0[2], &s.theta, &s.eta] {
        total += e(c, 1) + e(c, 2) + e(c, 3);
    }
    total + e(&g, 0) + e(&g, 1) + e(&g, 2)
}

struct Sampler<'a> {
    grid: &'a SpectralGrid,
    config: &'a SimConfig,
    sup_h2: f64,
    integral: f64,
    last: Option<(f64, f64)>,
}

impl Sampler<'_> {
    fn sample(&mut self, step: usize, t: f64, s: &PerturbationState) -> Result<MonitorSample> {
        let g = self.grid;
        let h2 = s.h_norm(g, 2);
        let rate = dissipation_integrand(g, s);
        if let Some((t0, r0)) = self.last {
            self.integral += 0.5 * (t - t0) * (r0 + rate);
        }
        self.last = Some((t, rate));
        self.sup_h2 = self.sup_h2.max(h2 * h2);
        let e = energy_functionals(g, s, &self.config.cutoffs, self.config.coupling);
        let n = nonlinear_part(g, s, self.config)?;
        let pair = diagonalize(&s.theta, &s.eta);
        Ok(MonitorSample {
            step,
            t,
            grad_norms: [0, 1, 2].map(|m| s.sobolev_norm(g, m)),
            h2_norm: h2,
            high_functional: e.high,
            low_functional: e.low,
            n_functional: self.sup_h2 + self.integral,
            balance: balance_terms(g, s, &n),
            min_density: s.min_density(g),
            relaxation_norm: g.norm_l2(&pair.g_var),
            component_norms: s.components().map(|c| g.norm_l2(c)),
            shell_norms: s.components().map(|c| lowest_shell(g, c)),
        })
    }
}

/// Runs from seeded random data.
pub fn run(config: &SimConfig) -> Result<RunOutcome> {
    config.validate()?;
    let grid = config.grid()?;
    let initial = random_initial_state(&grid, config.amplitude, config.seed);
    run_from(config, &grid, initial, 0.0)
}

/// Runs from a given state at time `t0`.
pub fn run_from(
    config: &SimConfig,
    grid: &SpectralGrid,
    initial: PerturbationState,
    t0: f64,
) -> Result<RunOutcome> {
    config.validate()?;
    initial.check_grid(grid)?;
    if grid.n() != config.n || grid.box_len() != config.box_len {
        return Err(Error::param("grid", "grid does not match the configuration"));
    }
    let mut warnings = Vec::new();
    let bound = stability_bound(grid, &initial);
    if config.dt > 0.5 * bound {
        warnings.push(format!(
            "dt = {} exceeds half the explicit stability estimate {:.3e}",
            config.dt, bound
        ));
    }
    let stepper = Stepper::new(grid, config.dt, config.integrator)?;
    let mut sampler = Sampler {
        grid,
        config,
        sup_h2: 0.0,
        integral: 0.0,
        last: None,
    };
    let mut samples = Vec::new();
    let mut state = initial;
    let mut abort = None;
    let mut steps_taken = 0;
    let steps = config.steps();

    let abort_info = |step: usize, e: &Error, s: &PerturbationState| AbortInfo {
        step,
        time: t0 + step as f64 * config.dt,
        reason: e.to_string(),
        min_density: s.min_density(grid),
        max_coefficient: s.max_abs(),
    };

    match state.check_admissible(grid, config.density_floor) {
        Ok(_) => samples.push(sampler.sample(0, t0, &state)?),
        Err(e) => abort = Some(abort_info(0, &e, &state)),
    }
    if abort.is_none() {
        for step in 1..=steps {
            let next = stepper
                .step(grid, &state, |s| nonlinear_part(grid, s, config))
                .and_then(|s| {
                    if s.max_abs().is_finite() {
                        s.check_admissible(grid, config.density_floor).map(|_| s)
                    } else {
                        Err(Error::Admissibility {
                            min_density: f64::NAN,
                            floor: config.density_floor,
                        })
                    }
                });
            match next {
                Ok(s) => state = s,
                Err(e @ Error::Admissibility { .. }) => {
                    abort = Some(abort_info(step, &e, &state));
                    break;
                }
                Err(e) => return Err(e),
            }
            steps_taken = step;
            if step % config.monitor_every == 0 || step == steps {
                samples.push(sampler.sample(step, t0 + step as f64 * config.dt, &state)?);
            }
        }
    }
    let monitors = MonitorSeries { samples };
    let constants = measure(config, grid, &monitors);
    let time = t0 + steps_taken as f64 * config.dt;
    Ok(RunOutcome {
        record: RunRecord {
            config: config.clone(),
            initial_time: t0,
            steps_taken,
            monitors,
            abort,
            warnings,
            constants,
        },
        state,
        time,
    })
}

fn band(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn measure(config: &SimConfig, grid: &SpectralGrid, m: &MonitorSeries) -> MeasuredConstants {
    let s = &m.samples;
    let high_band = band(
        s.iter()
            .filter(|x| x.grad_norms[2] > 0.0)
            .map(|x| x.high_functional / x.grad_norms[2].powi(2)),
    );
    let low_band = band(
        s.iter()
            .filter(|x| x.grad_norms[0] > 0.0)
            .map(|x| x.low_functional / x.grad_norms[0].powi(2)),
    );
    let n0 = s.first().map_or(0.0, |x| x.n_functional);
    let n_growth = if n0 > 0.0 {
        s.iter().map(|x| x.n_functional / n0).fold(1.0, f64::max)
    } else {
        1.0
    };
    let h2_final_over_initial = match (s.first(), s.last()) {
        (Some(a), Some(b)) if a.h2_norm > 0.0 => b.h2_norm / a.h2_norm,
        _ => 1.0,
    };
    let after: Vec<&MonitorSample> = s.iter().filter(|x| x.t - s[0].t >= config.transient).collect();
    let h2_max_increase = after
        .windows(2)
        .filter(|w| w[0].h2_norm > 0.0)
        .map(|w| (w[1].h2_norm - w[0].h2_norm) / w[0].h2_norm)
        .reduce(f64::max);
    let min_density = s.iter().map(|x| x.min_density).fold(f64::INFINITY, f64::min);

    let uniform: Vec<&MonitorSample> = s.iter().filter(|x| x.step % config.monitor_every == 0).collect();
    let balance_residual = if uniform.len() >= 3 {
        let times: Vec<f64> = uniform.iter().map(|x| x.t).collect();
        let terms: Vec<BalanceTerms> = uniform.iter().map(|x| x.balance).collect();
        let scale = terms.iter().map(|b| b.energy).fold(0.0, f64::max);
        match balance_residual(&times, &terms) {
            Ok(r) if scale > 0.0 => r.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max) / scale,
            _ => 0.0,
        }
    } else {
        0.0
    };

    MeasuredConstants {
        high_band,
        low_band,
        n_growth,
        h2_final_over_initial,
        h2_max_increase,
        min_density,
        balance_residual,
        late_time: late_time_fit(grid, m),
    }
}

/// Exponential rates over the second half of the sampled interval.
pub fn late_time_fit(grid: &SpectralGrid, m: &MonitorSeries) -> Option<LateTimeFit> {
    let s = &m.samples;
    let (first, last) = (s.first()?, s.last()?);
    let window = (0.5 * (first.t + last.t), last.t);
    let late: Vec<&MonitorSample> = s.iter().filter(|x| x.t >= window.0).collect();
    if late.len() < 3 {
        return None;
    }
    let rate = |f: &dyn Fn(&MonitorSample) -> f64| -> Option<f64> {
        let pts: Vec<(f64, f64)> = late.iter().map(|x| (x.t, f(x))).collect();
        fit_log_linear(&pts).ok().map(|(_, k)| k)
    };
    let dominant = (0..6).max_by(|&a, &b| last.shell_norms[a].total_cmp(&last.shell_norms[b]))?;
    if last.shell_norms[dominant] <= 0.0 {
        return None;
    }
    let slowest = (0..6)
        .filter(|&c| last.component_norms[c] > 0.0)
        .filter_map(|c| rate(&|x| x.component_norms[c]))
        .fold(f64::INFINITY, f64::min);
    let gap = min_real_part(&full_eigenvalues([1.0 / grid.box_len(), 0.0, 0.0]));
    Some(LateTimeFit {
        window,
        gap,
        dominant_component: COMPONENTS[dominant].to_string(),
        dominant_rate: rate(&|x| x.shell_norms[dominant])?,
        total_rate: rate(&|x| x.grad_norms[0])?,
        relaxation_rate: rate(&|x| x.relaxation_norm)?,
        slowest_component_rate: slowest,
    })
}

/// Integrates without monitors; fails on loss of admissibility.
pub fn integrate(
    config: &SimConfig,
    grid: &SpectralGrid,
    stepper: &Stepper,
    initial: &PerturbationState,
    steps: usize,
) -> Result<PerturbationState> {
    let mut s = initial.clone();
    for _ in 0..steps {
        s = stepper.step(grid, &s, |x| nonlinear_part(grid, x, config))?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SimConfig {
        SimConfig {
            n: 8,
            box_len: 1.0,
            dt: 0.01,
            t_end: 0.2,
            monitor_every: 2,
            amplitude: 0.01,
            transient: 0.0,
            ..SimConfig::default()
        }
    }

    #[test]
    fn zero_data_gives_zero_monitors() {
        let c = SimConfig {
            amplitude: 0.0,
            ..small()
        };
        let out = run(&c).unwrap();
        assert!(out.record.abort.is_none());
        assert_eq!(out.record.monitors.samples.len(), 11);
        for s in &out.record.monitors.samples {
            assert_eq!(s.h2_norm, 0.0);
            assert_eq!(s.n_functional, 0.0);
            assert_eq!(s.balance, BalanceTerms::default());
            assert_eq!(s.min_density, 1.0);
        }
        assert_eq!(out.state.max_abs(), 0.0);
    }

    #[test]
    fn large_data_aborts_with_partial_record() {
        let c = SimConfig {
            amplitude: 10.0,
            ..small()
        };
        let out = run(&c).unwrap();
        let a = out.record.abort.as_ref().expect("abort");
        assert_eq!(a.step, 0);
        assert!(a.min_density < 0.25);
        assert!(out.record.monitors.samples.is_empty());
    }

    #[test]
    fn small_run_is_recorded() {
        let out = run(&small()).unwrap();
        let r = &out.record;
        assert!(!r.aborted());
        assert_eq!(r.steps_taken, 20);
        assert!(r.monitors.all_finite());
        assert!(r.high_band_holds());
        assert!(r.floor_held());
        assert!(r.constants.n_growth >= 1.0);
        assert!((out.time - 0.2).abs() < 1e-12);
    }
}
