//! Numerical laboratory for the diffusion-approximation radiation
//! hydrodynamics system linearized around the equilibrium
//! `(density, velocity, temperature, radiation) = (1, 0, 1, 1)`.
//!
//! The crate is organised the way the analysis is:
//!
//! * [`model`]: parameters, perturbation state, nonlinear right-hand side and
//!   the `(G, F) = (4θ − η, θ + η)` change of variables.
//! * [`fourier`]: periodic spectral grid, Fourier multipliers, the smooth
//!   low/medium/high frequency split and the Hodge decomposition.
//! * [`linear`]: per-frequency symbols, Routh–Hurwitz certificates,
//!   eigenvalues, matrix exponentials, decay envelopes and the low-frequency
//!   Lyapunov functional.
//! * [`decay`]: whole-space linear evolution by radial quadrature and
//!   algebraic decay-exponent fitting.
//! * [`sim`]: integrating-factor pseudo-spectral integrator for the full
//!   nonlinear system with energy-functional monitors.

pub mod decay;
pub mod error;
pub mod fourier;
pub mod linear;
pub mod model;
pub mod sim;

pub use error::{Error, Result};
