//! Assembled single-qubit Hamiltonian: conserved quantities and the sector spectrum.

use majorana_readout::effective::{assembled_sector_spectrum, block_spectrum};
use majorana_readout::models::{build_single_qubit, logical_state, DeviceParams, Truncation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = DeviceParams {
        e_c: 1.0,
        eps0: 0.2,
        n_g: 0.1,
        t_l: 0.4,
        t_r: 0.25,
        phi_x: 0.7,
        lambda_c: 0.02,
        lambda_0: 0.0,
        omega_r: 3.0,
        kappa: 0.0,
    };
    let m = build_single_qubit(&p, &Truncation { charge_min: -2, charge_max: 2, n_max: 4 })?;
    println!("dim = {}, nnz = {}", m.basis.dim(), m.h_static.nnz());
    println!("hermitian: {}", m.h_static.is_hermitian(1e-12));
    for name in ["parity", "charge_q", "sigma_z_logical"] {
        let c = m.h_static.commutator(m.observable(name).unwrap()).max_abs();
        println!("|[H, {name}]| = {c:.1e}");
    }

    for n in -1..=1 {
        let num = assembled_sector_spectrum(n, &p)?;
        let mut exact = block_spectrum(n, &p)?.eigenvalues();
        exact.sort_by(f64::total_cmp);
        let err = num.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("sector {n:+}: {num:.6?}, max error {err:.1e}");
    }

    let z = m.observable("sigma_z_logical").unwrap();
    for s in [1, -1] {
        let psi = logical_state(&m, s)?;
        println!("<sigma_z> in logical state {s:+} = {:.12}", z.expectation_vec(&psi).re);
    }
    Ok(())
}
