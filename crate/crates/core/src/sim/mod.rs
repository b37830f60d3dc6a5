//! Pseudo-spectral integrator for the full nonlinear system on the periodic
//! box, with the energy functionals and the zero-order balance as monitors.

mod checkpoint;
mod checks;
mod config;
mod energy;
mod init;
mod integrator;
mod run;

pub use checkpoint::{read_checkpoint, write_checkpoint, Checkpoint, MAGIC};
pub use checks::{balance_check, balance_convergence, linear_limit_error, step_convergence, Convergence};
pub use config::{stability_bound, Integrator, SimConfig};
pub use energy::{balance_residual, balance_terms, energy_functionals, BalanceTerms, EnergyFunctionals};
pub use init::random_initial_state;
pub use integrator::Stepper;
pub use run::{
    integrate, late_time_fit, run, run_from, AbortInfo, LateTimeFit, MeasuredConstants, MonitorSample,
    MonitorSeries, RunOutcome, RunRecord,
};
