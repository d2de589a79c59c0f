//! Longitudinal readout of Majorana qubits.
//!
//! The crate builds the device Hamiltonians of a Majorana island coupled to
//! a microwave resonator, derives their low-energy couplings in closed form
//! and numerically, and simulates the resulting readout and two-qubit gate.
//!
//! - [`algebra`]: Fock bases over charge, fermion and boson sectors, and
//!   sparse operators with Jordan-Wigner fermions.
//! - [`models`]: single-qubit, four-Majorana, longitudinal and two-qubit
//!   Hamiltonians with their conserved observables.
//! - [`effective`]: closed-form qubit splitting, longitudinal coupling,
//!   four-Majorana coefficients and gate parameters, plus a full-model oracle
//!   for the coupling.
//! - [`sw`]: Schrieffer-Wolff expansion to sixth order and decomposition of
//!   effective Hamiltonians on Majorana operator bases.
//! - [`readout`]: Lindblad integration, homodyne signal statistics, seeded
//!   Monte Carlo and the ZZ phase simulation.
//! - [`cli`]: the `mzm-readout` front end.
//!
//! Energies are angular frequencies in arbitrary consistent units.

// `!(x > 0.0)` guards reject NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod models;
pub mod effective;
pub mod sw;
pub mod readout;
pub mod cli;
