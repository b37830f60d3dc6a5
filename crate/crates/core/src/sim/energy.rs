use serde::{Deserialize, Serialize};

use crate::fourier::{frequency_split, CutoffPair, ScalarField, SpectralGrid};
use crate::model::{diagonalize, PerturbationState};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyFunctionals {
    /// `‖∇²U‖² − c⟨∇div u, ∇ρ^h⟩`
    pub high: f64,
    /// `‖(ρ, u, F)‖² + ½‖G‖² + ¼⟨u, ∇ρ^l⟩`
    pub low: f64,
}

fn gradient_inner(grid: &SpectralGrid, f: &ScalarField, g: &ScalarField) -> f64 {
    grid.inner_vec(&grid.gradient(f), &grid.gradient(g))
}

pub fn energy_functionals(
    grid: &SpectralGrid,
    state: &PerturbationState,
    cut: &CutoffPair,
    coupling: f64,
) -> EnergyFunctionals {
    let split = frequency_split(grid, &state.rho, cut);
    let div = grid.divergence(&state.vel);
    let high = state.sobolev_norm(grid, 2).powi(2) - coupling * gradient_inner(grid, &div, &split.high);

    let pair = diagonalize(&state.theta, &state.eta);
    let sq = |f: &ScalarField| grid.inner(f, f);
    let vel_sq = grid.inner_vec(&state.vel, &state.vel);
    let low = sq(&state.rho) + vel_sq + sq(&pair.f_var) + 0.5 * sq(&pair.g_var)
        + 0.25 * grid.inner_vec(&state.vel, &grid.gradient(&split.low));
    EnergyFunctionals { high, low }
}

/// Pieces of the zero-order balance
/// `d/dt ½∫(4ρ² + 4|u|² + 4θ² + η²) + D = −4∫u·∇η + ∫(4ρ𝒩₁ + 4u·𝒩₂ + 4θ𝒩₃ + η𝒩₄)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BalanceTerms {
    pub energy: f64,
    /// `∫(4|∇u|² + 4|∇θ|² + |∇η|² + 8|div u|² + |4θ−η|²)`
    pub dissipation: f64,
    pub forcing: f64,
}

/// Evaluates the balance pieces; `nonlinear` is `𝒩(U)` as used by the solver.
pub fn balance_terms(
    grid: &SpectralGrid,
    state: &PerturbationState,
    nonlinear: &PerturbationState,
) -> BalanceTerms {
    let sq = |f: &ScalarField| grid.inner(f, f);
    let vel_sq = grid.inner_vec(&state.vel, &state.vel);
    let energy = 0.5 * (4.0 * sq(&state.rho) + 4.0 * vel_sq + 4.0 * sq(&state.theta) + sq(&state.eta));

    let div = grid.divergence(&state.vel);
    let grad_u: f64 = state.vel.0.iter().map(|c| gradient_inner(grid, c, c)).sum();
    let pair = diagonalize(&state.theta, &state.eta);
    let dissipation = 4.0 * grad_u
        + 4.0 * gradient_inner(grid, &state.theta, &state.theta)
        + gradient_inner(grid, &state.eta, &state.eta)
        + 8.0 * sq(&div)
        + sq(&pair.g_var);

    let forcing = -4.0 * grid.inner_vec(&state.vel, &grid.gradient(&state.eta))
        + 4.0 * grid.inner(&state.rho, &nonlinear.rho)
        + 4.0 * grid.inner_vec(&state.vel, &nonlinear.vel)
        + 4.0 * grid.inner(&state.theta, &nonlinear.theta)
        + grid.inner(&state.eta, &nonlinear.eta);
    BalanceTerms {
        energy,
        dissipation,
        forcing,
    }
}

/// Central-difference weights `c_j`, `f'(0) ≈ Σ c_j (f(j) − f(−j))/h`.
const STENCILS: [&[f64]; 4] = [
    &[0.5],
    &[2.0 / 3.0, -1.0 / 12.0],
    &[0.75, -0.15, 1.0 / 60.0],
    &[0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0],
];

/// `dE/dt + D − F` at interior samples of a uniformly spaced series.
///
/// The time derivative uses the widest central stencil (up to eighth order)
/// that fits every reported sample.
pub fn balance_residual(times: &[f64], terms: &[BalanceTerms]) -> Result<Vec<(f64, f64)>> {
    if times.len() != terms.len() {
        return Err(Error::param("times", "one balance sample per time stamp required"));
    }
    if times.len() < 3 {
        return Err(Error::param("times", format!("need at least 3 samples, got {}", times.len())));
    }
    let h = times[1] - times[0];
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(f64::MIN_POSITIVE));
    if !(h > 0.0) || !uniform {
        return Err(Error::param("times", "samples must be uniformly spaced and increasing"));
    }
    let width = ((times.len() - 1) / 2).min(STENCILS.len());
    let c = STENCILS[width - 1];
    Ok((width..times.len() - width)
        .map(|i| {
            let de: f64 = c
                .iter()
                .enumerate()
                .map(|(j, w)| w * (terms[i + j + 1].energy - terms[i - j - 1].energy))
                .sum::<f64>()
                / h;
            (times[i], de + terms[i].dissipation - terms[i].forcing)
        })
        .collect())
}
