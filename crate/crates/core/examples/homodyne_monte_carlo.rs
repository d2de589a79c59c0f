//! Seeded Monte Carlo of the homodyne assignment against the closed form.

use majorana_readout::readout::{parameter_noise_fidelity, sample_homodyne, ReadoutStats};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = ReadoutStats::new(0.5, 1.0, 2.0)?;
    let n = 2_000_000;
    let plus = sample_homodyne(s.mu, s.sigma, 1, n, 7)?;
    let minus = sample_homodyne(s.mu, s.sigma, -1, n, 8)?;
    println!("closed form 1-F = {:.6e}", s.infidelity);
    println!("state +1:   1-F = {:.6e} +- {:.1e}", plus.infidelity(), plus.std_error);
    println!("state -1:   1-F = {:.6e} +- {:.1e}", minus.infidelity(), minus.std_error);

    // same seed, same counts
    let again = sample_homodyne(s.mu, s.sigma, 1, n, 7)?;
    println!("rerun identical: {}", again == plus);

    for level in [0.0, 0.05, 0.2] {
        let e = parameter_noise_fidelity(&s, level, n, 7)?;
        println!("coupling noise {level:4.2}: 1-F = {:.6e}", e.infidelity());
    }
    Ok(())
}
