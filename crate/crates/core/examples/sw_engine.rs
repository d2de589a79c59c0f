//! Generic Schrieffer-Wolff expansion on a small two-level-plus-bath problem.

use std::sync::Arc;

use majorana_readout::algebra::{build_basis, OperatorMatrix, Sector, C64};
use majorana_readout::sw::{sw_effective, SwProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // two low states at 0 and 0.1 coupled to two high states at 5 and 7
    let basis = Arc::new(build_basis(vec![Sector::boson("level", 3)])?);
    let e = [0.0, 0.1, 5.0, 7.0];
    let h0 = OperatorMatrix::diagonal(basis.clone(), |i| C64::new(e[i], 0.0));
    let v = 0.2;
    let trip = [(0, 2, v), (2, 0, v), (1, 3, v), (3, 1, v), (0, 3, 0.5 * v), (3, 0, 0.5 * v)]
        .into_iter()
        .map(|(i, j, x)| (i, j, C64::new(x, 0.0)));
    let vop = OperatorMatrix::from_triplets(basis.clone(), trip)?;
    let exact = (&h0 + &vop).to_dense().map(|z| z.re).symmetric_eigenvalues();
    let mut exact: Vec<f64> = exact.iter().copied().collect();
    exact.sort_by(f64::total_cmp);
    println!("exact low levels {:.10?}", &exact[..2]);
    for order in [2, 4, 6] {
        let r = sw_effective(&SwProblem::new(h0.clone(), vop.clone(), vec![0, 1], order))?;
        let mut ev: Vec<f64> = r.h_eff.map(|z| z.re).symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        let err = ev.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("order {order}: {ev:.10?}, error {err:.1e}");
    }
    Ok(())
}
