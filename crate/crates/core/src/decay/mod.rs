//! Whole-space linear decay by radial quadrature in Fourier space, power-law
//! fitting, and `L^p` rate arithmetic.

mod experiment;
mod fit;
mod quadrature;
mod rates;

pub use experiment::{
    evolve_radial, log_time_grid, Band, DecayExperimentConfig, NormSeries, RadialEvolution,
    RadialProfile, TRUNCATION_TOL,
};
pub use fit::{fit_exponent, DecayFit, CONCLUSIVE_R2, MIN_FIT_POINTS};
pub use quadrature::{QuadratureSpec, RadialQuadrature};
pub use rates::{
    default_lp_indices, grad_lp_rate, lp_rate_table, round_to_quarter, theorem_grad_rate,
    theorem_u_rate, time_derivative_rates, u_lp_rate, LpIndex, LpRateRow, RateScalar,
};
