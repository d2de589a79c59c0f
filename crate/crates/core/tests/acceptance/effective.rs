use std::f64::consts::TAU;

use majorana_readout::effective::{assembled_sector_spectrum, block_spectrum, four_mzm_coefficients, four_mzm_loop_coefficients};
use majorana_readout::models::{DeviceParams, FourMzmParams};
use majorana_readout::sw::{classical_field_b_oracle, sw_p4_coefficient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Outcome, Verdict};

/// 100 random sectors with `t/delta` log-uniform in `[1e-2, 10]` and uniform
/// flux; errors are relative to the largest eigenvalue magnitude.
pub fn block_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut draws = 0;
    while draws < 100 {
        let n = rng.random_range(-1..=1);
        let base = DeviceParams {
            e_c: rng.random_range(0.1..2.0),
            eps0: rng.random_range(-3.0..3.0),
            n_g: rng.random_range(-0.5..0.5),
            t_l: 0.0,
            t_r: 0.0,
            phi_x: rng.random_range(0.0..TAU),
            lambda_c: 0.0,
            lambda_0: 0.0,
            omega_r: 1.0,
            kappa: 0.0,
        };
        let d = base.delta(n).abs();
        if d < 1e-2 {
            continue;
        }
        let mut ratio = || 10f64.powf(rng.random_range(-2.0..1.0));
        let p = DeviceParams { t_l: ratio() * d, t_r: ratio() * d, ..base };
        let num = assembled_sector_spectrum(n, &p).map_err(|e| e.to_string())?;
        let mut want = block_spectrum(n, &p).map_err(|e| e.to_string())?.eigenvalues();
        want.sort_by(f64::total_cmp);
        let scale = want.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (a, b) in num.iter().zip(&want) {
            worst = worst.max((a - b).abs() / scale);
        }
        draws += 1;
    }
    Ok(Verdict::new(worst <= 1e-10, format!("{draws} draws, max rel error {worst:.1e} (tol 1e-10)")))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Symmetric point `E = 10`, `eps = 5`, `t = 0.3` (`t/Delta = 0.02`).
pub fn four_mzm() -> Outcome {
    let sw_err = |e: majorana_readout::sw::SwError| e.to_string();
    let eff_err = |e: majorana_readout::effective::EffectiveError| e.to_string();
    let t = 0.3;
    let p = FourMzmParams::symmetric(10.0, 5.0, t);
    let two_orderings = four_mzm_coefficients(&p).map_err(eff_err)?;
    let full = four_mzm_loop_coefficients(&p).map_err(eff_err)?;
    let sw = sw_p4_coefficient(&p).map_err(sw_err)?;
    // A at unit tunneling
    let a_unit = two_orderings.a.re / t.powi(4);

    let mut pl = p;
    pl.lambda_1 = 1.0;
    pl.lambda_2 = 1.0;
    let two_orderings_b = four_mzm_coefficients(&pl).map_err(eff_err)?.b.re;
    let full_b = four_mzm_loop_coefficients(&pl).map_err(eff_err)?.b.re;
    let b = classical_field_b_oracle(&pl, None).map_err(sw_err)?;

    let mut pu = p;
    [pu.lambda_l, pu.lambda_r, pu.lambda_1, pu.lambda_2] = [0.7; 4];
    let b_uniform = classical_field_b_oracle(&pu, None).map_err(sw_err)?;

    let e_a = rel(sw, two_orderings.p4_coefficient());
    let e_b = rel(b, two_orderings_b);
    Ok(Verdict::all(vec![
        Verdict::new(rel(a_unit, 1.0 / 2250.0) < 1e-12, format!("two-ordering A at t = 1 is 1/{:.1}", 1.0 / a_unit)),
        Verdict::new(
            e_a <= 1e-3,
            format!(
                "SW P4 coefficient {sw:.6e} vs -2A {:.6e}: rel {e_a:.3} (tol 1e-3), ratio {:.4}; all-orderings form rel {:.1e}",
                two_orderings.p4_coefficient(),
                sw / two_orderings.p4_coefficient(),
                rel(sw, full.p4_coefficient())
            ),
        ),
        Verdict::new(
            e_b <= 1e-4,
            format!(
                "B oracle {b:.6e} vs two-ordering {two_orderings_b:.6e}: rel {e_b:.3} (tol 1e-4), ratio {:.4}; all-orderings form rel {:.1e}",
                b / two_orderings_b,
                rel(b, full_b)
            ),
        ),
        Verdict::new(b_uniform.abs() <= 1e-12, format!("B with equal lambdas {b_uniform:.1e} (tol 1e-12)")),
    ]))
}
