use nalgebra::Vector6;
use serde::{Deserialize, Serialize};

use super::config::SimConfig;
use super::energy::{balance_residual, balance_terms, BalanceTerms};
use super::init::random_initial_state;
use super::integrator::Stepper;
use super::run::integrate;
use crate::fourier::SpectralGrid;
use crate::linear::full_propagator;
use crate::model::{nonlinear_terms, ModelParameters, PerturbationState};
use crate::Result;

/// Relative distance after `steps` steps between the full solver started
/// from amplitude-`amplitude` data and the exact linear propagator.
pub fn linear_limit_error(config: &SimConfig, amplitude: f64, steps: usize) -> Result<f64> {
    config.validate()?;
    let grid = config.grid()?;
    let initial = random_initial_state(&grid, amplitude, config.seed);
    let stepper = Stepper::new(&grid, config.dt, config.integrator)?;
    let full = integrate(config, &grid, &stepper, &initial, steps)?;
    let t = steps as f64 * config.dt;
    let mut exact = PerturbationState::zeros(&grid);
    for idx in 0..grid.len() {
        if !grid.is_retained(idx) {
            continue;
        }
        let e = full_propagator(t, grid.derivative_wavevector(idx))? * Vector6::from(initial.mode(idx));
        exact.set_mode(idx, [e[0], e[1], e[2], e[3], e[4], e[5]]);
    }
    Ok(full.max_abs_diff(&exact) / exact.max_abs())
}

/// Errors at `dt` and `dt/2` against a `dt/8` reference.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub dt: f64,
    pub errors: (f64, f64),
}

impl Convergence {
    /// `err(dt)/err(dt/2)`; about 4 for a second-order method.
    pub fn ratio(&self) -> f64 {
        self.errors.0 / self.errors.1
    }

    pub fn observed_order(&self) -> f64 {
        self.ratio().log2()
    }
}

/// Self-convergence of the terminal state at `config.t_end`.
pub fn step_convergence(config: &SimConfig) -> Result<Convergence> {
    config.validate()?;
    let grid = config.grid()?;
    let initial = random_initial_state(&grid, config.amplitude, config.seed);
    let solve = |refine: usize| -> Result<PerturbationState> {
        let dt = config.dt / refine as f64;
        let stepper = Stepper::new(&grid, dt, config.integrator)?;
        integrate(config, &grid, &stepper, &initial, config.steps() * refine)
    };
    let reference = solve(8)?;
    let e1 = solve(1)?.max_abs_diff(&reference);
    let e2 = solve(2)?.max_abs_diff(&reference);
    Ok(Convergence {
        dt: config.dt,
        errors: (e1, e2),
    })
}

/// Largest balance residual relative to the energy scale, sampling every
/// `sample_every` steps.
pub fn balance_check(
    config: &SimConfig,
    grid: &SpectralGrid,
    initial: &PerturbationState,
    sample_every: usize,
) -> Result<f64> {
    let stepper = Stepper::new(grid, config.dt, config.integrator)?;
    let params = ModelParameters::default();
    let mut s = initial.clone();
    let mut times = Vec::new();
    let mut terms: Vec<BalanceTerms> = Vec::new();
    let every = sample_every.max(1);
    for step in (0..=config.steps()).step_by(every) {
        let n = if config.linear_only {
            PerturbationState::zeros(grid)
        } else {
            nonlinear_terms(grid, &s, &params, config.density_floor)?.into_state()
        };
        times.push(step as f64 * config.dt);
        terms.push(balance_terms(grid, &s, &n));
        if step + every <= config.steps() {
            s = integrate(config, grid, &stepper, &s, every)?;
        }
    }
    let scale = terms.iter().map(|b| b.energy).fold(0.0, f64::max);
    let r = balance_residual(&times, &terms)?;
    let max = r.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max);
    Ok(if scale > 0.0 { max / scale } else { 0.0 })
}

/// Balance residuals at `dt` and `dt/2`, both sampled every `dt`.
pub fn balance_convergence(config: &SimConfig) -> Result<Convergence> {
    config.validate()?;
    let grid = config.grid()?;
    let initial = random_initial_state(&grid, config.amplitude, config.seed);
    let e1 = balance_check(config, &grid, &initial, 1)?;
    let half = SimConfig {
        dt: 0.5 * config.dt,
        ..config.clone()
    };
    let e2 = balance_check(&half, &grid, &initial, 2)?;
    Ok(Convergence {
        dt: config.dt,
        errors: (e1, e2),
    })
}
