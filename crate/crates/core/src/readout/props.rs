use proptest::prelude::*;

use super::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn infidelity_falls_with_time_and_coupling(g in 0.05f64..5.0, kt in 0.1f64..5.0, f in 1.01f64..2.0) {
        let e = assignment_infidelity(g, 1.0, kt).unwrap();
        prop_assert!(e > 0.0 && e < 0.5);
        let later = assignment_infidelity(g, 1.0, f * kt).unwrap();
        let stronger = assignment_infidelity(f * g, 1.0, kt).unwrap();
        prop_assert!(later < e && stronger < e);
    }

    #[test]
    fn time_to_infidelity_inverts(g in 0.2f64..10.0, kappa in 0.1f64..10.0, exp in 2.0f64..9.0) {
        let target = 10f64.powf(-exp);
        let tau = time_to_infidelity(g * kappa, kappa, target, None).unwrap();
        let e = assignment_infidelity(g * kappa, kappa, tau).unwrap();
        prop_assert!(((e - target) / target).abs() < 1e-8, "{e} vs {target}");
    }

    #[test]
    fn sampling_is_a_function_of_the_seed(mu in 0.0f64..3.0, seed in any::<u64>(), n in 1u64..200_000) {
        let a = sample_homodyne(mu, 1.0, 1, n, seed).unwrap();
        let b = sample_homodyne(mu, 1.0, 1, n, seed).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a.samples, n);
    }
}
