//! Island-resonator coupling from circuit values.

use std::f64::consts::TAU;

use majorana_readout::effective::{capacitive_coupling, Capacitance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omega_r = TAU * 5e9;
    let e_c = TAU * 10e9;
    for z_r in [50.0, 200.0, 1000.0] {
        for c_c in [0.5e-15, 2e-15] {
            let l = capacitive_coupling(omega_r, z_r, Capacitance::Absolute { c_c, e_c })?;
            println!("Z_r = {z_r:6.0} ohm, C_c = {:.1} fF: lambda_C / 2pi = {:9.3} MHz", c_c * 1e15, l / TAU / 1e6);
        }
    }
    let l = capacitive_coupling(omega_r, 50.0, Capacitance::Ratio { ratio: 0.1 })?;
    println!("C_c/C = 0.1 at 50 ohm: lambda_C / 2pi = {:.3} MHz", l / TAU / 1e6);
    Ok(())
}
