use std::f64::consts::TAU;

use majorana_readout::readout::assignment_fidelity;

use crate::{Outcome, Verdict};

/// kappa/2pi = 1 MHz, g/2pi = 5 MHz, tau = 300 ns.
pub fn infidelity_at_300_ns() -> Outcome {
    let kappa = TAU * 1e6;
    let g = TAU * 5e6;
    let e = 1.0 - assignment_fidelity(g, kappa, 300e-9).map_err(|e| e.to_string())?;
    Ok(Verdict::new((2e-7..=2e-6).contains(&e), format!("1 - F = {e:.3e}, window [2e-7, 2e-6]")))
}
