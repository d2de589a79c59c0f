//! Full-model oracle for the longitudinal coupling and the normalization it selects.

use majorana_readout::effective::adjudicate_gz;
use majorana_readout::models::DeviceParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = DeviceParams {
        e_c: 2.0,
        eps0: 0.5,
        n_g: 0.05,
        t_l: 0.0,
        t_r: 0.0,
        phi_x: 0.4,
        lambda_c: 0.0,
        lambda_0: 0.003,
        omega_r: 1.0,
        kappa: 0.0,
    };
    let d = base.delta(0).abs();
    let devices: Vec<_> = [0.1, 0.3, 0.5, 1.0]
        .iter()
        .map(|&r| DeviceParams { t_l: r * d, t_r: 0.8 * r * d, lambda_c: 0.003 + d / 200.0, ..base })
        .collect();
    let adj = adjudicate_gz(&devices, 1e-3)?;
    println!("{:>8} {:>13} {:>13} {:>13}", "t/delta", "oracle", "g_f/2", "g_f/4");
    for p in &adj.points {
        println!("{:8.3} {:13.6e} {:13.6e} {:13.6e}", p.t_over_delta, p.oracle, p.g_f_half, p.g_f_quarter);
    }
    println!("selected: g_z = {}", adj.winner);
    Ok(())
}
