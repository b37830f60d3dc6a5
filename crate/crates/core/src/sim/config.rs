use serde::{Deserialize, Serialize};

use crate::fourier::{CutoffPair, SpectralGrid};
use crate::model::{PerturbationState, DEFAULT_DENSITY_FLOOR};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// Heun's method in the integrating-factor frame; second order.
    #[default]
    IfRk2,
    /// `(I + hA)⁻¹(u + hN(u))`; first order.
    ImexEuler,
}

impl Integrator {
    pub fn order(self) -> u32 {
        match self {
            Integrator::IfRk2 => 2,
            Integrator::ImexEuler => 1,
        }
    }
}

/// Settings of one periodic-box run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Points per axis.
    pub n: usize,
    /// The box is `[0, 2πL)³`.
    pub box_len: f64,
    pub dt: f64,
    pub t_end: f64,
    pub integrator: Integrator,
    /// Volume-normalized `H²` norm of the initial data, `‖U₀‖_{H²}/|𝕋³|^{1/2}`.
    pub amplitude: f64,
    pub cutoffs: CutoffPair,
    /// Steps between monitor samples.
    pub monitor_every: usize,
    pub seed: u64,
    pub density_floor: f64,
    /// Coefficient of `⟨∇div u, ∇ρ^h⟩` in `ℋ`.
    pub coupling: f64,
    /// Drop the nonlinear terms entirely.
    pub linear_only: bool,
    /// Samples before this time are excluded from the monotonicity check.
    pub transient: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n: 32,
            box_len: 4.0,
            dt: 0.05,
            t_end: 50.0,
            integrator: Integrator::IfRk2,
            amplitude: 1e-3,
            cutoffs: CutoffPair::default(),
            monitor_every: 10,
            seed: 1,
            density_floor: DEFAULT_DENSITY_FLOOR,
            coupling: 0.05,
            linear_only: false,
            transient: 1.0,
        }
    }
}

impl SimConfig {
    /// Every violated constraint.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.n < 8 || !self.n.is_power_of_two() {
            out.push(format!("n must be a power of two >= 8, got {}", self.n));
        }
        if !(self.box_len > 0.0 && self.box_len.is_finite()) {
            out.push(format!("box_len must be positive, got {}", self.box_len));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            out.push(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            out.push(format!("t_end must be finite and >= 0, got {}", self.t_end));
        } else if self.dt > 0.0 {
            let steps = self.t_end / self.dt;
            if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
                out.push(format!("t_end = {} is not a whole number of steps of {}", self.t_end, self.dt));
            }
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            out.push(format!("amplitude must be finite and >= 0, got {}", self.amplitude));
        }
        out.extend(self.cutoffs.violations());
        if self.monitor_every == 0 {
            out.push("monitor_every must be at least 1".into());
        }
        if !(self.density_floor > 0.0 && self.density_floor < 1.0) {
            out.push(format!("density_floor must lie in (0, 1), got {}", self.density_floor));
        }
        if !(self.coupling >= 0.0 && self.coupling < 1.0) {
            out.push(format!("coupling must lie in [0, 1), got {}", self.coupling));
        }
        if !(self.transient >= 0.0) {
            out.push(format!("transient must be >= 0, got {}", self.transient));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::param("sim", v.join("; ")))
        }
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn grid(&self) -> Result<SpectralGrid> {
        SpectralGrid::new(self.n, self.box_len)
    }
}

/// Step size at which the explicit nonlinear part leaves the stability
/// region of Heun's method (`|hλ| ≤ 2` on the negative axis), estimated from
/// the stiffest retained multiplier times the size of the coefficients it
/// multiplies in `𝒩`.
pub fn stability_bound(grid: &SpectralGrid, state: &PerturbationState) -> f64 {
    let phys = state.to_physical(grid);
    let sup = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let rho = sup(&phys.rho);
    let g = if rho < 1.0 { rho / (1.0 - rho) } else { f64::INFINITY };
    let u = phys.vel.iter().map(|c| sup(c)).fold(0.0, f64::max);
    let theta = sup(&phys.theta);
    let k = grid.max_retained_wavenumber();
    let rate = 3.0 * g * k * k + (u + g + theta) * k + 12.0 * theta * (1.0 + theta);
    if rate > 0.0 {
        2.0 / rate
    } else {
        f64::INFINITY
    }
}
