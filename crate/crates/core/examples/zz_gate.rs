//! Conditional ZZ phase from two longitudinally coupled qubits sharing a resonator.

use majorana_readout::effective::{two_qubit_gate, zz_coefficient};
use majorana_readout::models::{CouplingDrive, TwoQubitParams};
use majorana_readout::readout::{simulate_zz_phase, LindbladOptions, ZZ_TARGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = CouplingDrive { g_bar: 0.0, g_tilde: 0.1, omega_m: 22.0, phase: 0.0 };
    let p = TwoQubitParams { omega_q1: 0.3, omega_q2: 0.2, omega_r: 20.0, kappa: 0.0, drive1: d, drive2: d };
    let (j_rwa, t_gate) = two_qubit_gate(d.g_tilde, d.g_tilde, d.omega_m, p.omega_r)?;
    let j_exact = zz_coefficient(d.g_tilde, d.g_tilde, 0.0, 0.0, d.omega_m, p.omega_r)?;
    println!("J rotating-wave = {j_rwa:.6e}, gate time {t_gate:.3}");
    println!("J exact polaron = {j_exact:.6e}");

    let run = simulate_zz_phase(&p, 6, None, 101, &LindbladOptions::default())?;
    println!("simulated J     = {:.6e}", run.j_numeric);
    println!("phase at the gate time {:.4} vs target {:.4}", run.zz_phase, ZZ_TARGET);
    println!("qubit purity {:.6}", run.qubit_purity);
    Ok(())
}
