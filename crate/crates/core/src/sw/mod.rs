//! Numerical Schrieffer-Wolff expansion and operator decomposition.

mod decompose;
mod engine;
#[cfg(test)]
mod props;
mod four_mzm;

use thiserror::Error;

use crate::models::ModelError;

pub use decompose::{majorana_decompose, restrict};
pub use engine::{sw_effective, SwProblem, SwResult, MAX_ORDER};
pub use four_mzm::{
    classical_field_b_oracle, exact_p4_coefficient, four_mzm_sw, p4_coefficient, quantized_b_check,
    sw_p4_coefficient,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SwError {
    #[error("degenerate SW: a low state is degenerate with a coupled excited state")]
    DegenerateGap,
    #[error("unsupported order {0} (1..=6)")]
    UnsupportedOrder(usize),
    #[error("H0 must be diagonal")]
    NonDiagonalH0,
    #[error("low-energy subspace is empty")]
    EmptyLowSpace,
    #[error("projector must be diagonal with entries 0 or 1")]
    InvalidProjector,
    #[error("operators belong to different bases")]
    BasisMismatch,
    #[error("generator {0} has the wrong shape")]
    ShapeMismatch(String),
    #[error("generators are not orthogonal: {0}")]
    NonOrthogonal(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
