//! Fock basis with charge, fermion and boson sectors; Majorana algebra checks.

use std::sync::Arc;

use majorana_readout::algebra::{
    boson_annihilator, build_basis, fermion_annihilator, majorana_pair, number, parity, OperatorMatrix, Sector, C64,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let basis = Arc::new(build_basis(vec![
        Sector::charge("N", -1, 1),
        Sector::fermion("n_b"),
        Sector::fermion("n_f"),
        Sector::boson("a", 3),
    ])?);
    println!("dim = {}", basis.dim());
    println!("state 5 = {:?}", basis.label(5));

    let b = basis.find("n_b").unwrap();
    let f = basis.find("n_f").unwrap();
    let cb = fermion_annihilator(&basis, b)?;
    let cf = fermion_annihilator(&basis, f)?;
    let id = OperatorMatrix::identity(basis.clone());

    // {c_b, c_f^dag} = 0 needs the Jordan-Wigner string
    println!("|{{c_b, c_f^dag}}| = {:.1e}", cb.anticommutator(&cf.adjoint()).max_abs());
    println!("|{{c_f, c_f^dag}} - 1| = {:.1e}", (&cf.anticommutator(&cf.adjoint()) - &id).max_abs());

    let (g1, g2) = majorana_pair(&basis, f)?;
    println!("|g1^2 - 1| = {:.1e}", (&(&g1 * &g1) - &id).max_abs());
    let lhs = (&g1 * &g2).scale(C64::new(0.0, 1.0));
    let rhs = &number(&basis, f)?.scale_re(2.0) - &id;
    println!("|i g1 g2 - (2n - 1)| = {:.1e}", (&lhs - &rhs).max_abs());

    let p = parity(&basis, &[b, f])?;
    println!("parity commutes with g1 g2: {:.1e}", p.commutator(&(&g1 * &g2)).max_abs());

    let a = boson_annihilator(&basis, basis.find("a").unwrap())?;
    let ad = a.adjoint();
    let comm = a.commutator(&ad);
    // [a, a^dag] = 1 except on the truncation edge
    let edge = basis.sector_edge_states(basis.find("a").unwrap());
    println!("[a, a^dag] on first state = {}, on an edge state = {}", comm.get(0, 0), comm.get(edge[0], edge[0]));
    Ok(())
}
