use num_complex::Complex64;

use crate::fourier::{h_norm, sobolev_norm, ScalarField, SpectralGrid, VectorField};
use crate::{Error, Result};

/// Default floor on `1 + ρ` below which a state is inadmissible.
pub const DEFAULT_DENSITY_FLOOR: f64 = 0.25;

/// Perturbation `(ρ, u, θ, η)` of the equilibrium `(1, 0, 1, 1)`, held as
/// spectral coefficients on a [`SpectralGrid`]. Physical values are produced
/// on demand with [`PerturbationState::to_physical`].
///
/// The same type doubles as a tangent vector (time derivative of a state).
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationState {
    pub rho: ScalarField,
    pub vel: VectorField,
    pub theta: ScalarField,
    pub eta: ScalarField,
}

/// Collocation values of a state.
#[derive(Clone, Debug)]
pub struct PhysicalState {
    pub rho: Vec<f64>,
    pub vel: [Vec<f64>; 3],
    pub theta: Vec<f64>,
    pub eta: Vec<f64>,
}

/// Component order used by mode vectors, checkpoints and the 6×6 symbol.
pub const COMPONENTS: [&str; 6] = ["rho", "u1", "u2", "u3", "theta", "eta"];

impl PerturbationState {
    pub fn zeros(grid: &SpectralGrid) -> Self {
        let len = grid.len();
        Self {
            rho: ScalarField::zeros(len),
            vel: VectorField::zeros(len),
            theta: ScalarField::zeros(len),
            eta: ScalarField::zeros(len),
        }
    }

    pub fn from_physical(grid: &SpectralGrid, phys: &PhysicalState) -> Self {
        Self {
            rho: grid.forward(&phys.rho),
            vel: VectorField([
                grid.forward(&phys.vel[0]),
                grid.forward(&phys.vel[1]),
                grid.forward(&phys.vel[2]),
            ]),
            theta: grid.forward(&phys.theta),
            eta: grid.forward(&phys.eta),
        }
    }

    pub fn to_physical(&self, grid: &SpectralGrid) -> PhysicalState {
        PhysicalState {
            rho: grid.inverse(&self.rho),
            vel: [
                grid.inverse(&self.vel.0[0]),
                grid.inverse(&self.vel.0[1]),
                grid.inverse(&self.vel.0[2]),
            ],
            theta: grid.inverse(&self.theta),
            eta: grid.inverse(&self.eta),
        }
    }

    pub fn components(&self) -> [&ScalarField; 6] {
        [
            &self.rho,
            &self.vel.0[0],
            &self.vel.0[1],
            &self.vel.0[2],
            &self.theta,
            &self.eta,
        ]
    }

    pub fn components_mut(&mut self) -> [&mut ScalarField; 6] {
        let [u1, u2, u3] = &mut self.vel.0;
        [&mut self.rho, u1, u2, u3, &mut self.theta, &mut self.eta]
    }

    pub fn check_grid(&self, grid: &SpectralGrid) -> Result<()> {
        for c in self.components() {
            grid.check(c)?;
        }
        Ok(())
    }

    /// `(ρ̂, û₁, û₂, û₃, θ̂, η̂)` at one mode.
    pub fn mode(&self, idx: usize) -> [Complex64; 6] {
        self.components().map(|c| c.coeffs[idx])
    }

    pub fn set_mode(&mut self, idx: usize, v: [Complex64; 6]) {
        for (c, x) in self.components_mut().into_iter().zip(v) {
            c.coeffs[idx] = x;
        }
    }

    pub fn axpy(&mut self, a: f64, other: &PerturbationState) {
        for (x, y) in self.components_mut().into_iter().zip(other.components()) {
            x.axpy(a, y);
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        for c in out.components_mut() {
            *c = c.scaled(a);
        }
        out
    }

    pub fn max_abs_diff(&self, other: &PerturbationState) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().map(|c| c.max_abs()).fold(0.0, f64::max)
    }

    pub fn dealias(&mut self, grid: &SpectralGrid) {
        for c in self.components_mut() {
            grid.dealias(c);
        }
    }

    pub fn symmetrize(&mut self, grid: &SpectralGrid) {
        for c in self.components_mut() {
            grid.symmetrize(c);
        }
    }

    /// `‖∇^m (ρ, u, θ, η)‖_{L²}`
    pub fn sobolev_norm(&self, grid: &SpectralGrid, m: u32) -> f64 {
        self.components()
            .iter()
            .map(|c| sobolev_norm(grid, c, m).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `‖(ρ, u, θ, η)‖_{H^k}`
    pub fn h_norm(&self, grid: &SpectralGrid, k: u32) -> f64 {
        self.components()
            .iter()
            .map(|c| h_norm(grid, c, k).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Mean-free copy (zero modes removed).
    pub fn without_mean(&self) -> Self {
        let mut out = self.clone();
        for c in out.components_mut() {
            c.coeffs[0] = Complex64::new(0.0, 0.0);
        }
        out
    }

    pub fn max_imaginary(&self, grid: &SpectralGrid) -> f64 {
        self.components()
            .iter()
            .map(|c| grid.max_imaginary(c))
            .fold(0.0, f64::max)
    }

    /// `min(1 + ρ)` over the collocation grid.
    pub fn min_density(&self, grid: &SpectralGrid) -> f64 {
        min_density(&grid.inverse(&self.rho))
    }

    pub fn check_admissible(&self, grid: &SpectralGrid, floor: f64) -> Result<f64> {
        let min = self.min_density(grid);
        admissible(min, floor)?;
        Ok(min)
    }
}

pub(crate) fn min_density(rho: &[f64]) -> f64 {
    rho.iter().fold(f64::INFINITY, |m, r| m.min(1.0 + r))
}

pub(crate) fn admissible(min_density: f64, floor: f64) -> Result<()> {
    if min_density >= floor && min_density.is_finite() {
        Ok(())
    } else {
        Err(Error::Admissibility { min_density, floor })
    }
}
