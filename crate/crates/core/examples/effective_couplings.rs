//! Qubit splitting and longitudinal coupling along a tunnelling sweep.

use majorana_readout::effective::{effective_params, longitudinal_coupling};
use majorana_readout::models::DeviceParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = DeviceParams {
        e_c: 1.0,
        eps0: 0.0,
        n_g: 0.0,
        t_l: 0.0,
        t_r: 0.0,
        phi_x: 0.3,
        lambda_c: 0.01,
        lambda_0: 0.0,
        omega_r: 1.0,
        kappa: 0.0,
    };
    let delta = base.delta(0);
    println!("delta = {delta}");
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "t/delta", "omega_q", "small_t", "g_z", "small_t");
    for k in 0..=8 {
        let r = 10f64.powf(-2.0 + 0.25 * k as f64);
        let p = DeviceParams { t_l: r * delta, t_r: 0.7 * r * delta, ..base };
        let e = effective_params(&p)?;
        println!("{r:8.4} {:12.5e} {:12.5e} {:12.5e} {:12.5e}", e.omega_q, e.small_t_omega_q, e.g_z, e.small_t_g_z);
    }

    // the coupling vanishes where t_L e^{i phi/2} + t_R and t_L e^{i phi/2} - t_R have equal modulus
    let node = DeviceParams { t_l: 0.3, t_r: 0.3, phi_x: std::f64::consts::PI, ..base };
    println!("g_z at the flux node = {}", longitudinal_coupling(&node)?.exact);
    Ok(())
}
