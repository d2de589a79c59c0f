//! Resonator displacement of the ideal longitudinal readout against the closed form.

use majorana_readout::models::build_ideal_readout;
use majorana_readout::readout::{
    basis_state, cavity_displacement, lindblad_evolve, linear_grid, separation_run, LindbladOptions,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, kappa) = (1.0, 1.0);
    let m = build_ideal_readout(g, 20)?;
    let times = linear_grid(0.0, 6.0, 7);
    let rec = lindblad_evolve(&m, kappa, &basis_state(&m, &[1, 0])?, &times, &LindbladOptions::default())?;
    println!("{:>5} {:>22} {:>22} {:>9}", "t", "<a> simulated", "closed form", "purity");
    for (k, &t) in times.iter().enumerate() {
        let want = cavity_displacement(g, kappa, t, 1)?.alpha;
        println!("{t:5.1} {:>22.8} {:>22.8} {:9.6}", rec.a[k], want, rec.purity[k]);
    }

    let run = separation_run(
        &m,
        kappa,
        &basis_state(&m, &[1, 0])?,
        &basis_state(&m, &[0, 0])?,
        &linear_grid(0.0, 12.0, 13),
        &LindbladOptions::default(),
    )?;
    println!("separation {:.6} vs 2 g/kappa = {}", run.separation, 2.0 * g / kappa);
    println!("sigma_z drift {:.1e}", run.qnd_drift);
    Ok(())
}
