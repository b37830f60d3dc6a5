//! Nonlinear terms `𝒩₁..𝒩₄` and the assembled right-hand side.
//!
//! Derivatives are spectral. Products are formed on the collocation grid and
//! the transformed results are truncated with the 2/3 rule.

use num_complex::Complex64;
use rayon::prelude::*;

use super::params::ModelParameters;
use super::state::{admissible, min_density, PerturbationState};
use crate::fourier::{ScalarField, SpectralGrid, VectorField};
use crate::{Error, Result};

/// `(g, h) = (1/(1+ρ) − 1, 1/(1+ρ))`, defined while `1 + ρ ≥ floor`.
pub fn coeff_functions(rho: f64, floor: f64) -> Result<(f64, f64)> {
    let density = 1.0 + rho;
    if !(density >= floor) {
        return Err(Error::Admissibility {
            min_density: density,
            floor,
        });
    }
    let h = 1.0 / density;
    Ok((h - 1.0, h))
}

/// The four nonlinear right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearTerms {
    pub n1: ScalarField,
    pub n2: VectorField,
    pub n3: ScalarField,
    pub n4: ScalarField,
}

impl NonlinearTerms {
    pub fn into_state(self) -> PerturbationState {
        PerturbationState {
            rho: self.n1,
            vel: self.n2,
            theta: self.n3,
            eta: self.n4,
        }
    }
}

/// Collocation values of everything the nonlinear terms need.
struct Collocated {
    rho: Vec<f64>,
    u: [Vec<f64>; 3],
    theta: Vec<f64>,
    grad_rho: [Vec<f64>; 3],
    grad_theta: [Vec<f64>; 3],
    grad_eta: [Vec<f64>; 3],
    /// `grad_u[i][j] = ∂ⱼ uᵢ`
    grad_u: [[Vec<f64>; 3]; 3],
    lap_u: [Vec<f64>; 3],
    grad_div_u: [Vec<f64>; 3],
    lap_theta: Vec<f64>,
    eta: Vec<f64>,
}

impl Collocated {
    fn new(grid: &SpectralGrid, s: &PerturbationState) -> Self {
        let inv = |f: &ScalarField| grid.inverse(f);
        let inv3 = |v: &VectorField| [inv(&v.0[0]), inv(&v.0[1]), inv(&v.0[2])];
        let div = grid.divergence(&s.vel);
        let grad_u = [0, 1, 2].map(|i| inv3(&grid.gradient(&s.vel.0[i])));
        Self {
            rho: inv(&s.rho),
            u: inv3(&s.vel),
            theta: inv(&s.theta),
            eta: inv(&s.eta),
            grad_rho: inv3(&grid.gradient(&s.rho)),
            grad_theta: inv3(&grid.gradient(&s.theta)),
            grad_eta: inv3(&grid.gradient(&s.eta)),
            grad_u,
            lap_u: [0, 1, 2].map(|i| inv(&grid.laplacian(&s.vel.0[i]))),
            grad_div_u: inv3(&grid.gradient(&div)),
            lap_theta: inv(&grid.laplacian(&s.theta)),
        }
    }
}

/// Pointwise values `(𝒩₁, 𝒩₂, 𝒩₃, 𝒩₄)` at one collocation point.
fn pointwise(c: &Collocated, p: usize) -> [f64; 6] {
    let rho = c.rho[p];
    let th = c.theta[p];
    let eta = c.eta[p];
    let u = [c.u[0][p], c.u[1][p], c.u[2][p]];
    let du = |i: usize, j: usize| c.grad_u[i][j][p];
    let h = 1.0 / (1.0 + rho);
    let g = h - 1.0;
    let div_u = du(0, 0) + du(1, 1) + du(2, 2);

    let grad_rho_dot_u: f64 = (0..3).map(|j| c.grad_rho[j][p] * u[j]).sum();
    let n1 = -rho * div_u - grad_rho_dot_u;

    let mut n2 = [0.0; 3];
    for (i, out) in n2.iter_mut().enumerate() {
        let advect: f64 = (0..3).map(|j| u[j] * du(i, j)).sum();
        *out = -advect - (g + h * th) * c.grad_rho[i][p]
            + g * (c.lap_u[i][p] + 2.0 * c.grad_div_u[i][p] - c.grad_eta[i][p]);
    }

    let mut dd = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let e = 0.5 * (du(i, j) + du(j, i));
            dd += e * e;
        }
    }
    let poly = th * th * (th * th + 4.0 * th + 6.0);
    let u_grad_theta: f64 = (0..3).map(|j| u[j] * c.grad_theta[j][p]).sum();
    let n3 = g * (c.lap_theta[p] + eta - 4.0 * th) - th * div_u - u_grad_theta
        + h * (div_u * div_u + 2.0 * dd - poly);
    let n4 = poly;
    [n1, n2[0], n2[1], n2[2], n3, n4]
}

/// Evaluates `𝒩₁..𝒩₄`; fails when `min(1+ρ) < floor` on the grid.
pub fn nonlinear_terms(
    grid: &SpectralGrid,
    state: &PerturbationState,
    params: &ModelParameters,
    floor: f64,
) -> Result<NonlinearTerms> {
    params.require_normalized()?;
    state.check_grid(grid)?;
    let c = Collocated::new(grid, state);
    admissible(min_density(&c.rho), floor)?;
    let values: Vec<[f64; 6]> = (0..grid.len())
        .into_par_iter()
        .map(|p| pointwise(&c, p))
        .collect();
    let column = |k: usize| {
        let v: Vec<f64> = values.iter().map(|row| row[k]).collect();
        let mut f = grid.forward(&v);
        grid.dealias(&mut f);
        f
    };
    Ok(NonlinearTerms {
        n1: column(0),
        n2: VectorField([column(1), column(2), column(3)]),
        n3: column(4),
        n4: column(5),
    })
}

/// Linear part `−A_ξ U` of the right-hand side, mode by mode.
pub fn linear_rhs(grid: &SpectralGrid, state: &PerturbationState) -> PerturbationState {
    let mut out = PerturbationState::zeros(grid);
    let i = Complex64::new(0.0, 1.0);
    for idx in 0..grid.len() {
        let xi = grid.derivative_wavevector(idx);
        let s = grid.kmag2()[idx];
        let [r, u1, u2, u3, th, et] = state.mode(idx);
        let u = [u1, u2, u3];
        let xi_dot_u = xi[0] * u[0] + xi[1] * u[1] + xi[2] * u[2];
        let div = i * xi_dot_u;
        let mut v = [Complex64::new(0.0, 0.0); 6];
        v[0] = -div;
        for a in 0..3 {
            // −∇ρ − ∇θ − ∇η + Δu + 2∇div u
            v[1 + a] = -i * xi[a] * (r + th + et) - s * u[a] - 2.0 * xi[a] * xi_dot_u;
        }
        v[4] = -div - s * th - 4.0 * th + et;
        v[5] = -s * et - et + 4.0 * th;
        out.set_mode(idx, v);
    }
    out
}

/// Full tangent `∂ₜ(ρ, u, θ, η)`: linear part plus `𝒩`.
pub fn rhs_full(
    grid: &SpectralGrid,
    state: &PerturbationState,
    params: &ModelParameters,
    floor: f64,
) -> Result<PerturbationState> {
    let n = nonlinear_terms(grid, state, params, floor)?;
    let mut out = linear_rhs(grid, state);
    out.axpy(1.0, &n.into_state());
    Ok(out)
}
