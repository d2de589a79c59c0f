//! Readout dynamics and statistics.
//!
//! The integrated homodyne signal for qubit state `s = +-1` is Gaussian with
//! mean `s mu` and standard deviation `sigma = sqrt(kappa tau)`, where
//! `mu = 2|g| tau [1 - (2/(kappa tau))(1 - e^{-kappa tau/2})]`. Assigning by
//! sign gives `1 - F = erfc(mu / (sqrt(2) sigma)) / 2`.

mod analytic;
mod homodyne;
mod lindblad;
#[cfg(test)]
mod props;
mod sim;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::effective::EffectiveError;
use crate::models::ModelError;

pub use analytic::{
    assignment_fidelity, assignment_infidelity, cavity_displacement, signal_stats, time_to_infidelity, Displacement,
    ReadoutStats,
};
pub use homodyne::{parameter_noise_fidelity, sample_homodyne, HomodyneEstimate};
pub use lindblad::{basis_state, lindblad_evolve, linear_grid, pure_state, LindbladOptions, TrajectoryRecord};
pub use sim::{separation_run, simulate_zz_phase, SeparationRun, ZzPhaseRun, ZZ_TARGET};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReadoutError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("target infidelity {target:e} not reached by tau = {tau_max:e}")]
    Unreachable { target: f64, tau_max: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("time step {dt:e} exceeds the stability limit {limit:e}")]
    StepTooLarge { dt: f64, limit: f64 },
    #[error("trace drifted by {error:e} at t = {t}")]
    TraceDrift { t: f64, error: f64 },
    #[error("truncation edge population {occupancy:e} at t = {t}")]
    EdgeOccupancy { t: f64, occupancy: f64 },
    #[error("unknown observable {0}")]
    UnknownObservable(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Effective(#[from] EffectiveError),
}
