//! Model parameters, perturbation state, nonlinear terms and the `(G, F)`
//! change of variables.

mod diag;
mod nonlinear;
mod params;
mod state;

pub use diag::{diagonalize, q_inverse, q_transform, undiagonalize, DiagonalizedPair};
pub use nonlinear::{coeff_functions, linear_rhs, nonlinear_terms, rhs_full, NonlinearTerms};
pub use params::ModelParameters;
pub use state::{PerturbationState, PhysicalState, COMPONENTS, DEFAULT_DENSITY_FLOOR};
