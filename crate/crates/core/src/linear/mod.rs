//! Per-frequency analysis of the linearized system: symbols, characteristic
//! polynomial, Routh–Hurwitz minors, eigenvalues, propagators, decay
//! envelopes and the low-frequency Lyapunov functional.

mod charpoly;
mod eigen;
mod envelope;
pub mod expm;
mod hurwitz;
mod lyapunov;
mod propagator;
mod symbol;

pub use charpoly::{
    characteristic_coefficients, characteristic_coefficients_exact, coefficients_by_expansion,
    coefficients_by_leverrier,
};
pub use eigen::{companion_roots, eigenvalues, full_eigenvalues, min_real_part, multiset_distance};
pub use envelope::{
    band_min_real_part, band_samples, decay_envelope, envelope_time_grid, fit_log_linear,
    low_frequency_constant, DecayEnvelope,
};
pub use hurwitz::{
    hurwitz_determinants, hurwitz_sweep, minors_by_determinant, minors_closed_form, minors_exact,
    minors_from_coefficients, HurwitzReport, Verdict,
};
pub use lyapunov::{
    c11_at, dissipation_form, fitted_c11, lyapunov_dissipation, lyapunov_form, lyapunov_value,
    q_flow_matrix, LyapunovSample,
};
pub use propagator::{full_propagator, operator_norm, operator_norm6, propagator};
pub use symbol::{CompressibleSymbol, FullSymbol};
