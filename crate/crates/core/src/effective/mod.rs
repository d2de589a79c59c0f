//! Closed-form effective parameters.
//!
//! Single qubit: each charge sector `n` of the island/barrier/logical-fermion
//! system is four-dimensional and diagonalizes exactly. `delta(n)` is the
//! energy cost of moving an electron from the island into the barrier, and
//! `f_pm = sqrt(delta^2 + |t_pm|^2)` with `t_pm = t_L e^{i phi/2} +- t_R`.
//! The canonical longitudinal coupling is `g_z = g_f(0)/2`, the value picked
//! by [`full_model_coupling_oracle`].

mod four_mzm;
mod gate;
mod oracle;
#[cfg(test)]
mod props;
mod single;

use thiserror::Error;

use crate::models::ModelError;

pub use four_mzm::{four_mzm_coefficients, four_mzm_loop_coefficients, FourMzmCoefficients, LoopCoefficients};
pub use gate::{capacitive_coupling, two_qubit_gate, zz_coefficient, Capacitance, E_CHARGE, HBAR, R_K};
pub use oracle::{adjudicate_gz, assembled_sector_spectrum, full_model_coupling_oracle, GzAdjudication, GzPoint};
pub use single::{
    block_couplings, block_spectrum, cos_half, coupling_modulation, effective_params, f_diff, f_pm, longitudinal_coupling, qubit_splitting,
    t_pm, BlockCouplings, BlockSpectrum, EffectiveParams, LongitudinalCoupling,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EffectiveError {
    #[error("degenerate sector: delta({n}) = 0")]
    DegenerateSector { n: i32 },
    #[error("invalid denominators: every Delta_i must be > 0")]
    InvalidDenominators,
    #[error("resonant modulation is readout, not a gate")]
    ResonantModulation,
    #[error("no coupling")]
    NoCoupling,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("oracle failed: {0}")]
    Oracle(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
