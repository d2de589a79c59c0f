use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use super::*;
use crate::models::DeviceParams;

/// Device with `delta(0) = delta` and `lambda_C - lambda_0 = dl`.
fn device(delta: f64, t_l: f64, t_r: f64, phi: f64, dl: f64) -> DeviceParams {
    DeviceParams {
        e_c: 1.0,
        eps0: delta - 1.0,
        n_g: 0.0,
        t_l,
        t_r,
        phi_x: phi,
        lambda_c: 0.3 + dl,
        lambda_0: 0.3,
        omega_r: 1.0,
        kappa: 0.0,
    }
}

fn delta() -> impl Strategy<Value = f64> {
    prop_oneof![0.2f64..5.0, -5.0f64..-0.2]
}

/// `10^x` for `x` uniform in `[lo, hi]`.
fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_map(|x| 10f64.powf(x))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flux_period_is_four_pi(d in delta(), rl in 0.0f64..3.0, rr in 0.0f64..3.0, phi in 0.0f64..2.0 * TAU) {
        let p = device(d, rl * d.abs(), rr * d.abs(), phi, 0.7);
        let q = DeviceParams { phi_x: phi + 2.0 * TAU, ..p };
        let (w0, _) = qubit_splitting(&p).unwrap();
        let (w1, _) = qubit_splitting(&q).unwrap();
        let g0 = longitudinal_coupling(&p).unwrap().exact;
        let g1 = longitudinal_coupling(&q).unwrap().exact;
        let floor = 1e-12 * d.abs();
        prop_assert!((w0 - w1).abs() <= 1e-9 * w0.abs() + floor, "{w0} {w1}");
        prop_assert!((g0 - g1).abs() <= 1e-9 * g0.abs() + floor, "{g0} {g1}");
    }

    #[test]
    fn flux_node_is_degenerate(d in delta(), t_l in 0.0f64..10.0, t_r in 0.0f64..10.0, k in -2i32..=2) {
        let p = device(d, t_l, t_r, PI + k as f64 * TAU, 0.7);
        prop_assert_eq!(qubit_splitting(&p).unwrap(), (0.0, 0.0));
        let g = longitudinal_coupling(&p).unwrap();
        prop_assert_eq!(g.exact, 0.0);
        prop_assert_eq!(g.small_t, 0.0);
    }

    #[test]
    fn coupling_is_splitting_derivative(
        d in delta(),
        rl in log_uniform(-1.0, 0.5),
        rr in log_uniform(-1.0, 0.5),
        phi in 0.0f64..TAU,
        dl in 0.1f64..2.0,
    ) {
        prop_assume!(cos_half(phi).abs() > 0.05);
        let p = device(d, rl * d.abs(), rr * d.abs(), phi, dl);
        let h = 1e-5 * d.abs();
        let w = |s: f64| qubit_splitting(&DeviceParams { eps0: p.eps0 + s, ..p }).unwrap().0;
        let dw = (w(h) - w(-h)) / (2.0 * h);
        let g_f = 2.0 * longitudinal_coupling(&p).unwrap().exact;
        prop_assert!(rel(g_f, -dl * dw) < 1e-6, "g_f {g_f} vs {}", -dl * dw);
    }

    #[test]
    fn small_t_splitting_converges(
        d in delta(),
        r in log_uniform(-3.0, -1.0),
        ratio in 0.1f64..=1.0,
        phi in 0.0f64..TAU,
    ) {
        prop_assume!(cos_half(phi).abs() > 1e-6);
        let p = device(d, r * d.abs(), ratio * r * d.abs(), phi, 1.0);
        let (w, w_small) = qubit_splitting(&p).unwrap();
        prop_assert!(rel(w_small, w) <= 2.0 * r * r, "t/delta {r}: {w} vs {w_small}");
    }

    #[test]
    fn sector_spectrum_matches_assembled(
        n in -1i32..=1,
        e_c in 0.1f64..2.0,
        eps0 in -3.0f64..3.0,
        n_g in -0.5f64..0.5,
        rl in log_uniform(-2.0, 1.0),
        rr in log_uniform(-2.0, 1.0),
        phi in 0.0f64..TAU,
    ) {
        let base = DeviceParams { e_c, eps0, n_g, t_l: 0.0, t_r: 0.0, phi_x: phi, lambda_c: 0.0, lambda_0: 0.0, omega_r: 1.0, kappa: 0.0 };
        let d = base.delta(n).abs();
        prop_assume!(d > 1e-2);
        let p = DeviceParams { t_l: rl * d, t_r: rr * d, ..base };
        let num = assembled_sector_spectrum(n, &p).unwrap();
        let mut want = block_spectrum(n, &p).unwrap().eigenvalues();
        want.sort_by(f64::total_cmp);
        let scale = want.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (a, b) in num.iter().zip(&want) {
            prop_assert!((a - b).abs() <= 1e-10 * scale, "{num:?} vs {want:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_matches_either_sign_of_delta(
        d in delta(),
        rl in log_uniform(-1.0, 0.0),
        rr in log_uniform(-1.0, 0.0),
        phi in 0.0f64..TAU,
    ) {
        prop_assume!(cos_half(phi).abs() > 0.1);
        let p = device(d, rl * d.abs(), rr * d.abs(), phi, d.abs() / 300.0);
        let want = longitudinal_coupling(&p).unwrap().exact;
        let got = full_model_coupling_oracle(&p).unwrap();
        prop_assert!(rel(got, want) < 1e-3, "oracle {got} vs {want}");
    }
}
