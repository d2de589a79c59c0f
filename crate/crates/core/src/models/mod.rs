//! Model Hamiltonians assembled as sparse operators.

mod bundle;
mod four_mzm;
mod longitudinal;
mod params;
#[cfg(test)]
mod props;
mod single;
mod two_qubit;

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, FockBasis, OperatorMatrix};

pub use bundle::{Drive, Envelope, Frame, Generator, ModelBundle, Resonator, ResonatorCoupling};
pub use four_mzm::{build_four_mzm, low_subspace, FourMzmTruncation};
pub use longitudinal::{build_ideal_readout, build_longitudinal};
pub use params::{CouplingDrive, DeviceParams, FourMzmParams, LongitudinalParams, TwoQubitParams};
pub use single::{
    build_single_qubit, build_single_qubit_modulated, default_boson_cutoff, logical_state, Modulation, Truncation,
};
pub use two_qubit::build_two_qubit;

/// Sector ids of the single-qubit basis.
pub mod single_qubit_sectors {
    pub use super::single::{BARRIER, ISLAND, LOGICAL, RESONATOR};
}

/// Sector ids of the four-Majorana basis.
pub mod four_mzm_sectors {
    pub use super::four_mzm::{BARRIER_1, BARRIER_2, ISLAND_L, ISLAND_R, PAIR_12, PAIR_34, RESONATOR};
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("assembled Hamiltonian is not Hermitian (deviation {0:e})")]
    NonHermitian(f64),
}

fn finish(
    basis: Arc<FockBasis>,
    h_system: OperatorMatrix,
    drives: Vec<Drive>,
    resonator: Option<Resonator>,
    observables: BTreeMap<String, OperatorMatrix>,
    qnd_observable: Option<String>,
    edge_states: Vec<usize>,
) -> Result<ModelBundle, ModelError> {
    let mut m = ModelBundle {
        basis: basis.clone(),
        h_static: OperatorMatrix::zeros(basis),
        drives,
        h_system,
        resonator,
        observables,
        qnd_observable,
        edge_states,
    };
    m.h_static = m.generator(Frame::Lab).h_static;
    let dev = (&m.h_static - &m.h_static.adjoint()).max_abs();
    if dev > 1e-12 * m.h_static.max_abs().max(1.0) {
        return Err(ModelError::NonHermitian(dev));
    }
    Ok(m)
}
