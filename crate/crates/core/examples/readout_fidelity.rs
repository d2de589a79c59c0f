//! Assignment fidelity of the integrated homodyne signal and time to a target infidelity.

use majorana_readout::readout::{time_to_infidelity, ReadoutError, ReadoutStats};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kappa = 1.0;
    println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "g/kappa", "1-F kt=1", "1-F kt=2", "kt @ 1e-3", "kt @ 1e-6");
    for g in [0.1, 0.3, 1.0, 3.0, 10.0] {
        let a = ReadoutStats::new(g * kappa, kappa, 1.0 / kappa)?;
        let b = ReadoutStats::new(g * kappa, kappa, 2.0 / kappa)?;
        let t = |target| match time_to_infidelity(g * kappa, kappa, target, Some(100.0 / kappa)) {
            Ok(tau) => format!("{:12.4}", kappa * tau),
            Err(ReadoutError::Unreachable { .. }) => format!("{:>12}", "unreachable"),
            Err(e) => panic!("{e}"),
        };
        println!("{g:8.2} {:12.4e} {:12.4e} {} {}", a.infidelity, b.infidelity, t(1e-3), t(1e-6));
    }
    Ok(())
}
