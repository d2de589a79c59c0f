use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::algebra::{build_basis, OperatorMatrix, Sector, C64};

/// Diagonal `H0` with `n_low` states in `[0, 1)` and the rest in `[3, 6)`,
/// plus a Hermitian perturbation that only couples the two blocks.
fn problem() -> impl Strategy<Value = (Vec<f64>, usize, Vec<(usize, usize, C64)>)> {
    (2usize..=12).prop_flat_map(|dim| {
        (1..dim).prop_flat_map(move |n_low| {
            let energies = (prop::collection::vec(0.0f64..1.0, n_low), prop::collection::vec(3.0f64..6.0, dim - n_low));
            let couplings = prop::collection::vec((-0.2f64..0.2, -0.2f64..0.2), n_low * (dim - n_low));
            (energies, couplings).prop_map(move |((lo, hi), c)| {
                let e: Vec<f64> = lo.into_iter().chain(hi).collect();
                let mut trip = Vec::new();
                for i in 0..n_low {
                    for k in n_low..dim {
                        let (re, im) = c[i * (dim - n_low) + (k - n_low)];
                        trip.push((i, k, C64::new(re, im)));
                        trip.push((k, i, C64::new(re, -im)));
                    }
                }
                (e, n_low, trip)
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn second_order_matches_perturbation_theory((e, n_low, trip) in problem()) {
        let basis = Arc::new(build_basis(vec![Sector::boson("x", e.len() - 1)]).unwrap());
        let h0 = OperatorMatrix::diagonal(basis.clone(), |i| C64::new(e[i], 0.0));
        let v = OperatorMatrix::from_triplets(basis, trip).unwrap();
        let low: Vec<usize> = (0..n_low).collect();
        let r = sw_effective(&SwProblem::new(h0, v.clone(), low, 2)).unwrap();
        prop_assert!(r.per_order[1].iter().all(|z| z.norm() == 0.0));
        for i in 0..n_low {
            for j in 0..n_low {
                let mut want = C64::new(0.0, 0.0);
                for k in n_low..e.len() {
                    let w = 0.5 * (1.0 / (e[i] - e[k]) + 1.0 / (e[j] - e[k]));
                    want += v.get(i, k) * v.get(k, j) * w;
                }
                prop_assert!((r.per_order[2][(i, j)] - want).norm() < 1e-10, "({i}, {j})");
            }
        }
    }
}
