//! Fock bases and sparse operator algebra.
//!
//! Conventions: a fermionic mode `f` carries the Majorana pair
//! `g1 = f + f^dag`, `g2 = i(f^dag - f)`, so `i g1 g2 = 2 f^dag f - 1`.
//! Fermion annihilators carry a Jordan-Wigner string over the fermionic
//! sectors declared before them.

mod basis;
mod operator;
mod ops;

pub use basis::{build_basis, BasisLabel, FockBasis, Sector, SectorId, SectorKind, DEFAULT_DIM_CAP};
pub use operator::{OperatorMatrix, C64};
pub use ops::{
    boson_annihilator, fermion_annihilator, island_charge_ops, majorana_pair, number, parity, partial_trace,
    projector,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("empty sector specification")]
    EmptySpec,
    #[error("charge sector {name:?} has empty range {min}..={max}")]
    EmptyChargeRange { name: String, min: i32, max: i32 },
    #[error("basis too large (cap {cap})")]
    BasisTooLarge { cap: usize },
    #[error("no sector with id {0}")]
    UnknownSector(usize),
    #[error("sector {name:?} is not a {expected} sector")]
    WrongSectorKind { name: String, expected: &'static str },
    #[error("operators belong to different bases")]
    BasisMismatch,
    #[error("entry ({row}, {col}) outside a basis of dimension {dim}")]
    IndexOutOfRange { row: usize, col: usize, dim: usize },
    #[error("expected a square matrix of dimension {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
}
