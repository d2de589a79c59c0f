use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;

fn device() -> impl Strategy<Value = DeviceParams> {
    (0.0f64..2.0, -3.0f64..3.0, -0.5f64..0.5, 0.0f64..2.0, 0.0f64..2.0, 0.0f64..TAU, -1.0f64..1.0, -1.0f64..1.0)
        .prop_map(|(e_c, eps0, n_g, t_l, t_r, phi_x, lambda_c, lambda_0)| DeviceParams {
            e_c,
            eps0,
            n_g,
            t_l,
            t_r,
            phi_x,
            lambda_c,
            lambda_0,
            omega_r: 1.5,
            kappa: 0.0,
        })
}

fn amplitude() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.5, 0.0f64..TAU).prop_map(|(r, th)| Complex64::from_polar(r, th))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn single_qubit_is_hermitian_and_conserving(p in device(), lo in -3i32..=-1, hi in 0i32..=2, n_max in 1usize..4) {
        let tr = Truncation { charge_min: lo, charge_max: hi, n_max };
        let m = build_single_qubit(&p, &tr).unwrap();
        prop_assert!(m.h_static.is_hermitian(1e-12));
        for name in ["parity", "charge_q", "sigma_z_logical"] {
            prop_assert_eq!(m.h_static.commutator(m.observable(name).unwrap()).max_abs(), 0.0, "{}", name);
        }
    }

    #[test]
    fn four_mzm_is_hermitian_and_conserving(
        e in 1.0f64..10.0,
        eps in 1.0f64..10.0,
        t in prop::array::uniform4(amplitude()),
        lam in prop::array::uniform4(-1.0f64..1.0),
    ) {
        let mut p = FourMzmParams::symmetric(e, eps, 0.0);
        [p.t1, p.t2, p.t3, p.t4] = t;
        [p.lambda_l, p.lambda_r, p.lambda_1, p.lambda_2] = lam;
        let m = build_four_mzm(&p, &FourMzmTruncation::default()).unwrap();
        prop_assert!(m.h_static.is_hermitian(1e-12));
        let c = m.h_static.commutator(m.observable("parity_tilde").unwrap());
        prop_assert!(c.max_abs() <= 1e-12);
    }

    #[test]
    fn two_qubit_generator_is_hermitian(
        wq in prop::array::uniform2(-1.0f64..1.0),
        g in prop::array::uniform2(0.0f64..0.5),
        gb in prop::array::uniform2(-0.2f64..0.2),
        t in 0.0f64..50.0,
    ) {
        let d = |k: usize| CouplingDrive { g_bar: gb[k], g_tilde: g[k], omega_m: 21.0 + k as f64, phase: 0.3 };
        let p = TwoQubitParams { omega_q1: wq[0], omega_q2: wq[1], omega_r: 20.0, kappa: 0.0, drive1: d(0), drive2: d(1) };
        let m = build_two_qubit(&p, 3).unwrap();
        let h = m.generator(Frame::Lab).at(t);
        prop_assert!(h.is_hermitian(1e-12));
        prop_assert!(h.commutator(m.observable("z1").unwrap()).max_abs() <= 1e-12);
        prop_assert!(h.commutator(m.observable("z2").unwrap()).max_abs() <= 1e-12);
    }
}
