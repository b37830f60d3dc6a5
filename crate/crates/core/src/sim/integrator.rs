use nalgebra::{Matrix6, Vector6};
use num_complex::Complex64;
use rayon::prelude::*;

use super::config::Integrator;
use crate::fourier::SpectralGrid;
use crate::linear::{full_propagator, FullSymbol};
use crate::model::PerturbationState;
use crate::{Error, Result};

/// One-step map with the per-mode linear factor cached for a fixed `dt`.
///
/// Only modes kept by the 2/3 rule are stored and evolved; every other
/// coefficient is zero after a step.
pub struct Stepper {
    dt: f64,
    integrator: Integrator,
    modes: Vec<usize>,
    factors: Vec<Matrix6<Complex64>>,
}

impl Stepper {
    pub fn new(grid: &SpectralGrid, dt: f64, integrator: Integrator) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param("dt", format!("must be positive, got {dt}")));
        }
        let modes: Vec<usize> = (0..grid.len()).filter(|&i| grid.is_retained(i)).collect();
        let factors = modes
            .par_iter()
            .map(|&idx| {
                let xi = grid.derivative_wavevector(idx);
                match integrator {
                    Integrator::IfRk2 => full_propagator(dt, xi),
                    Integrator::ImexEuler => {
                        let m = Matrix6::identity() + FullSymbol::new(xi).matrix * Complex64::new(dt, 0.0);
                        m.try_inverse()
                            .ok_or_else(|| Error::param("dt", "implicit factor is singular"))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dt,
            integrator,
            modes,
            factors,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn integrator(&self) -> Integrator {
        self.integrator
    }

    /// Applies the cached factor to every retained mode.
    pub fn apply_linear(&self, grid: &SpectralGrid, s: &PerturbationState) -> PerturbationState {
        let updated: Vec<[Complex64; 6]> = self
            .modes
            .par_iter()
            .zip(&self.factors)
            .map(|(&idx, m)| {
                let v = m * Vector6::from(s.mode(idx));
                [v[0], v[1], v[2], v[3], v[4], v[5]]
            })
            .collect();
        let mut out = PerturbationState::zeros(grid);
        for (&idx, v) in self.modes.iter().zip(updated) {
            out.set_mode(idx, v);
        }
        out
    }

    /// Advances `s` by one step. `nonlinear` returns the dealiased `𝒩(U)`.
    pub fn step<F>(&self, grid: &SpectralGrid, s: &PerturbationState, nonlinear: F) -> Result<PerturbationState>
    where
        F: Fn(&PerturbationState) -> Result<PerturbationState>,
    {
        let h = self.dt;
        let n0 = nonlinear(s)?;
        match self.integrator {
            Integrator::IfRk2 => {
                // v = E(u + hN(u)); u⁺ = E(u + h/2 N(u)) + h/2 N(v)
                let mut a = s.clone();
                a.axpy(h, &n0);
                let v = self.apply_linear(grid, &a);
                let n1 = nonlinear(&v)?;
                let mut b = s.clone();
                b.axpy(0.5 * h, &n0);
                let mut out = self.apply_linear(grid, &b);
                out.axpy(0.5 * h, &n1);
                out.dealias(grid);
                Ok(out)
            }
            Integrator::ImexEuler => {
                let mut a = s.clone();
                a.axpy(h, &n0);
                Ok(self.apply_linear(grid, &a))
            }
        }
    }
}
