use majorana_readout::effective::two_qubit_gate;
use majorana_readout::models::{build_ideal_readout, build_longitudinal, CouplingDrive, LongitudinalParams, TwoQubitParams};
use majorana_readout::readout::{basis_state, lindblad_evolve, separation_run, simulate_zz_phase, LindbladOptions, ZZ_TARGET};

use crate::{Outcome, Verdict};

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `g/(omega_m - omega_r) = 0.05`, `kappa = 0`, run to the closed-form gate time.
pub fn zz_gate() -> Outcome {
    let d = CouplingDrive { g_bar: 0.0, g_tilde: 0.1, omega_m: 22.0, phase: 0.0 };
    let p = TwoQubitParams { omega_q1: 0.3, omega_q2: 0.2, omega_r: 20.0, kappa: 0.0, drive1: d, drive2: d };
    let (j, t_g) = two_qubit_gate(0.1, 0.1, 22.0, 20.0).map_err(err)?;
    let run = simulate_zz_phase(&p, 6, Some(t_g), 2, &LindbladOptions::default()).map_err(err)?;
    let e = ((run.zz_phase - ZZ_TARGET) / ZZ_TARGET).abs();
    Ok(Verdict::all(vec![
        Verdict::new(
            e <= 0.05,
            format!(
                "ZZ phase at t_g = {t_g:.2} is {:.4} vs pi/4: rel {e:.3} (tol 0.05); J {j:.3e}, J from phase {:.4e}, exact J {:.4e}",
                run.zz_phase, run.j_numeric, run.j_exact
            ),
        ),
        Verdict::new(run.qubit_purity > 1.0 - 1e-3, format!("qubit purity {:.6}", run.qubit_purity)),
    ]))
}

pub fn displacement() -> Outcome {
    let mut parts = Vec::new();

    // ideal interaction-frame model, sigma_z = +1
    let (g, kappa) = (1.0, 1.0);
    let m = build_ideal_readout(g, 20).map_err(err)?;
    let rho = basis_state(&m, &[1, 0]).map_err(err)?;
    let times = [0.0, 0.5, 1.0, 2.0, 5.0];
    let rec = lindblad_evolve(&m, kappa, &rho, &times, &LindbladOptions::default()).map_err(err)?;
    let mut worst = 0.0f64;
    for (k, &t) in times.iter().enumerate().skip(1) {
        let want = g / kappa * (1.0 - (-0.5 * kappa * t).exp());
        worst = worst.max((rec.a[k].re - want).hypot(rec.a[k].im) / want);
    }
    parts.push(Verdict::new(worst <= 1e-6, format!("ideal model max rel error {worst:.1e} at kappa t = 0.5, 1, 2, 5 (tol 1e-6)")));
    let drift_ideal = rec.qnd.iter().map(|z| (z - rec.qnd[0]).abs()).fold(0.0, f64::max);

    // resonantly modulated coupling, omega_r / kappa = 200
    let (w, kappa, g) = (200.0, 1.0, 1.0);
    let drive = CouplingDrive { g_bar: 0.0, g_tilde: g, omega_m: w, phase: 0.0 };
    let m = build_longitudinal(&LongitudinalParams { omega_q: 0.0, omega_r: w, kappa, drive }, 42).map_err(err)?;
    let plus = basis_state(&m, &[1, 0]).map_err(err)?;
    let minus = basis_state(&m, &[0, 0]).map_err(err)?;
    let t = 12.0;
    let run = separation_run(&m, kappa, &plus, &minus, &[0.0, t / 2.0, t], &LindbladOptions::default()).map_err(err)?;
    let want = 2.0 * g / kappa * (1.0 - (-0.5 * kappa * t).exp());
    let e = ((run.separation - want) / want).abs();
    parts.push(Verdict::new(
        e <= 0.05,
        format!("modulated model separation {:.5} vs 2g/kappa {want:.5} at kappa t = 12: rel {e:.1e} (tol 0.05)", run.separation),
    ));
    let drift = run.qnd_drift.max(drift_ideal);
    parts.push(Verdict::new(drift < 1e-8, format!("sigma_z drift {drift:.1e} (tol 1e-8)")));
    Ok(Verdict::all(parts))
}
