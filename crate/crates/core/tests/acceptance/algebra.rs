use std::sync::Arc;

use majorana_readout::algebra::{
    boson_annihilator, build_basis, fermion_annihilator, island_charge_ops, majorana_pair, number, parity, AlgebraError,
    OperatorMatrix, Sector, SectorId, SectorKind,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use crate::{Outcome, Verdict};

const MAX_DIM: usize = 320;

fn sector() -> impl Strategy<Value = SectorKind> {
    prop_oneof![
        3 => Just(SectorKind::Fermion),
        1 => (-2i32..=0, 0i32..=3).prop_map(|(min, w)| SectorKind::Charge { min, max: min + w }),
        1 => (0usize..=4).prop_map(|n_max| SectorKind::Boson { n_max }),
    ]
}

/// Random sector lists with at least one fermion, cut to `MAX_DIM`.
fn sectors() -> impl Strategy<Value = Vec<Sector>> {
    prop::collection::vec(sector(), 1..=9).prop_map(|kinds| {
        let mut out = Vec::new();
        let mut dim = 1;
        for (k, kind) in kinds.into_iter().enumerate() {
            if dim * kind.dim() > MAX_DIM {
                continue;
            }
            dim *= kind.dim();
            out.push(Sector { name: format!("s{k}"), kind });
        }
        if !out.iter().any(|s| s.kind == SectorKind::Fermion) {
            out[0] = Sector { name: "s0".into(), kind: SectorKind::Fermion };
            while out.iter().map(|s| s.kind.dim()).product::<usize>() > MAX_DIM {
                out.pop();
            }
        }
        out
    })
}

fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn is_zero(op: &OperatorMatrix) -> bool {
    op.max_abs() == 0.0
}

/// Checks every property on one basis; returns its dimension.
fn check(sectors: Vec<Sector>) -> Result<usize, TestCaseError> {
    let basis = Arc::new(build_basis(sectors).map_err(|e| fail(e.to_string()))?);
    let ids: Vec<SectorId> = (0..basis.sectors().len()).map(SectorId).collect();
    let modes: Vec<SectorId> = basis.fermionic_sectors().collect();
    let id = OperatorMatrix::identity(basis.clone());
    let two = id.scale_re(2.0);
    let p = parity(&basis, &modes).map_err(|e| fail(e.to_string()))?;

    let mut gammas = Vec::new();
    let mut fs = Vec::new();
    for &m in &modes {
        let (g1, g2) = majorana_pair(&basis, m).map_err(|e| fail(e.to_string()))?;
        ensure(g1 == g1.adjoint() && g2 == g2.adjoint(), || format!("Majoranas of {m:?} not Hermitian"))?;
        let f = fermion_annihilator(&basis, m).map_err(|e| fail(e.to_string()))?;
        let n = number(&basis, m).map_err(|e| fail(e.to_string()))?;
        ensure(&f.adjoint() * &f == n, || format!("f^dag f != n for {m:?}"))?;
        // i g1 g2 = 2n - 1
        let z = (&g1 * &g2).scale(majorana_readout::algebra::C64::new(0.0, 1.0));
        ensure(z == &n.scale_re(2.0) - &id, || format!("i g1 g2 != 2n - 1 for {m:?}"))?;
        gammas.push(g1);
        gammas.push(g2);
        fs.push((f, n));
    }
    for (a, ga) in gammas.iter().enumerate() {
        ensure(is_zero(&p.anticommutator(ga)), || format!("parity does not anticommute with gamma {a}"))?;
        for (b, gb) in gammas.iter().enumerate() {
            let anti = ga.anticommutator(gb);
            let ok = if a == b { anti == two } else { is_zero(&anti) };
            ensure(ok, || format!("{{gamma_{a}, gamma_{b}}} wrong"))?;
        }
    }
    for (i, (fi, ni)) in fs.iter().enumerate() {
        ensure(is_zero(&p.commutator(ni)), || format!("parity does not commute with n_{i}"))?;
        for (j, (fj, nj)) in fs.iter().enumerate() {
            ensure(is_zero(&ni.commutator(nj)), || format!("[n_{i}, n_{j}] != 0"))?;
            ensure(is_zero(&fi.anticommutator(fj)), || format!("{{f_{i}, f_{j}}} != 0"))?;
            let anti = fi.anticommutator(&fj.adjoint());
            let ok = if i == j { anti == id } else { is_zero(&anti) };
            ensure(ok, || format!("{{f_{i}, f_{j}^dag}} wrong"))?;
        }
    }
    for &s in &ids {
        match basis.sector(s).unwrap().kind {
            SectorKind::Boson { n_max } => {
                let a = boson_annihilator(&basis, s).map_err(|e| fail(e.to_string()))?;
                let c = a.commutator(&a.adjoint());
                for i in 0..basis.dim() {
                    let want = if basis.local(i, s) < n_max { 1.0 } else { -(n_max as f64) };
                    ensure((c.get(i, i).re - want).abs() <= 1e-12, || format!("[a, a^dag] wrong at {i}"))?;
                }
                let num = &a.adjoint() * &a;
                ensure((&num - &number(&basis, s).unwrap()).max_abs() <= 1e-12, || "a^dag a != n".into())?;
                ensure(is_zero(&p.commutator(&a)), || "parity does not commute with a".into())?;
            }
            SectorKind::Charge { .. } => {
                let (n, up) = island_charge_ops(&basis, s).map_err(|e| fail(e.to_string()))?;
                ensure(n.commutator(&up) == up, || "[N, E+] != E+".into())?;
                ensure(n == n.adjoint(), || "N not Hermitian".into())?;
            }
            SectorKind::Fermion => {}
        }
    }
    Ok(basis.dim())
}

fn mismatch_rejected() -> bool {
    let a = Arc::new(build_basis(vec![Sector::fermion("f")]).unwrap());
    let b = Arc::new(build_basis(vec![Sector::fermion("f"), Sector::fermion("g")]).unwrap());
    let fa = fermion_annihilator(&a, SectorId(0)).unwrap();
    let fb = fermion_annihilator(&b, SectorId(0)).unwrap();
    matches!(fa.try_mul(&fb), Err(AlgebraError::BasisMismatch)) && matches!(fa.try_add(&fb), Err(AlgebraError::BasisMismatch))
}

pub fn properties() -> Outcome {
    let largest = vec![
        Sector::charge("N", -2, 2),
        Sector::fermion("a"),
        Sector::fermion("b"),
        Sector::boson("r", 3),
        Sector::fermion("c"),
        Sector::fermion("d"),
    ];
    let fixed = check(largest).map_err(|e| e.to_string())?;
    let dims = std::sync::Mutex::new(Vec::new());
    let mut runner = TestRunner::new(Config { cases: 96, failure_persistence: None, ..Config::default() });
    let result = runner.run(&sectors(), |s| {
        let d = check(s)?;
        dims.lock().unwrap().push(d);
        Ok(())
    });
    let dims = dims.into_inner().unwrap();
    let max = dims.iter().copied().max().unwrap_or(0).max(fixed);
    Ok(Verdict::all(vec![
        Verdict::new(
            result.is_ok(),
            match &result {
                Ok(()) => format!("{} random bases plus a dim-{fixed} basis, largest dim {max}", dims.len()),
                Err(e) => format!("property violated: {e}"),
            },
        ),
        Verdict::new(mismatch_rejected(), "operators from different bases rejected"),
    ]))
}
