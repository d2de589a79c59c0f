//! Elementary operators on a [`FockBasis`].

use std::sync::Arc;

use nalgebra::DMatrix;

use super::{build_basis, AlgebraError, FockBasis, OperatorMatrix, SectorId, SectorKind, C64};

fn expect_kind(basis: &FockBasis, id: SectorId, want: &'static str) -> Result<(), AlgebraError> {
    let s = basis.sector(id)?;
    let ok = matches!(
        (&s.kind, want),
        (SectorKind::Fermion, "fermion") | (SectorKind::Charge { .. }, "charge") | (SectorKind::Boson { .. }, "boson")
    );
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::WrongSectorKind { name: s.name.clone(), expected: want })
    }
}

/// Number of occupied fermionic modes declared before `id` in state `index`.
fn jw_count(basis: &FockBasis, index: usize, id: SectorId) -> i32 {
    basis.fermionic_sectors().take_while(|&k| k < id).map(|k| basis.value(index, k)).sum()
}

/// Annihilator of fermionic sector `mode` with a Jordan-Wigner string over
/// the fermionic sectors that precede it.
pub fn fermion_annihilator(basis: &Arc<FockBasis>, mode: SectorId) -> Result<OperatorMatrix, AlgebraError> {
    expect_kind(basis, mode, "fermion")?;
    let stride = basis.stride(mode);
    let trip = (0..basis.dim()).filter(|&i| basis.value(i, mode) == 1).map(|i| {
        let sign = if jw_count(basis, i, mode) % 2 == 0 { 1.0 } else { -1.0 };
        (i - stride, i, C64::new(sign, 0.0))
    });
    OperatorMatrix::from_triplets(basis.clone(), trip)
}

/// Majorana operators `(f + f^dag, i(f^dag - f))` of fermionic sector `mode`.
pub fn majorana_pair(basis: &Arc<FockBasis>, mode: SectorId) -> Result<(OperatorMatrix, OperatorMatrix), AlgebraError> {
    let f = fermion_annihilator(basis, mode)?;
    let fd = f.adjoint();
    let g1 = &f + &fd;
    let g2 = (&fd - &f).scale(C64::new(0.0, 1.0));
    Ok((g1, g2))
}

/// Charge operator and the raising operator `|N> -> |N+1>` of a charge
/// sector. The raising operator annihilates the top state of the range.
pub fn island_charge_ops(
    basis: &Arc<FockBasis>,
    id: SectorId,
) -> Result<(OperatorMatrix, OperatorMatrix), AlgebraError> {
    expect_kind(basis, id, "charge")?;
    let n = number(basis, id)?;
    let stride = basis.stride(id);
    let top = basis.sector(id)?.kind.dim() - 1;
    let trip = (0..basis.dim())
        .filter(|&i| basis.local(i, id) < top)
        .map(|i| (i + stride, i, C64::new(1.0, 0.0)));
    Ok((n, OperatorMatrix::from_triplets(basis.clone(), trip)?))
}

pub fn boson_annihilator(basis: &Arc<FockBasis>, id: SectorId) -> Result<OperatorMatrix, AlgebraError> {
    expect_kind(basis, id, "boson")?;
    let stride = basis.stride(id);
    let trip = (0..basis.dim()).filter(|&i| basis.local(i, id) > 0).map(|i| {
        let n = basis.local(i, id) as f64;
        (i - stride, i, C64::new(n.sqrt(), 0.0))
    });
    OperatorMatrix::from_triplets(basis.clone(), trip)
}

/// Diagonal operator holding the physical value of a sector: island charge,
/// fermion occupancy or photon number.
pub fn number(basis: &Arc<FockBasis>, id: SectorId) -> Result<OperatorMatrix, AlgebraError> {
    basis.sector(id)?;
    Ok(OperatorMatrix::diagonal(basis.clone(), |i| C64::new(basis.value(i, id) as f64, 0.0)))
}

/// `prod_k (-1)^{n_k}` over the given sectors (charge sectors contribute the
/// parity of the charge).
pub fn parity(basis: &Arc<FockBasis>, sectors: &[SectorId]) -> Result<OperatorMatrix, AlgebraError> {
    for &s in sectors {
        basis.sector(s)?;
    }
    Ok(OperatorMatrix::diagonal(basis.clone(), |i| {
        let total: i32 = sectors.iter().map(|&s| basis.value(i, s)).sum();
        C64::new(if total.rem_euclid(2) == 0 { 1.0 } else { -1.0 }, 0.0)
    }))
}

/// Diagonal projector onto basis states satisfying `keep`.
pub fn projector(basis: &Arc<FockBasis>, keep: impl Fn(usize) -> bool) -> OperatorMatrix {
    OperatorMatrix::diagonal(basis.clone(), |i| C64::new(if keep(i) { 1.0 } else { 0.0 }, 0.0))
}

/// Reduced density matrix on the sectors in `keep` (in basis order).
///
/// No fermionic sign is introduced: the result is exact whenever the traced
/// sectors are bosonic or the state is even in the traced fermions.
pub fn partial_trace(
    basis: &FockBasis,
    rho: &DMatrix<C64>,
    keep: &[SectorId],
) -> Result<(FockBasis, DMatrix<C64>), AlgebraError> {
    if rho.shape() != (basis.dim(), basis.dim()) {
        return Err(AlgebraError::ShapeMismatch { expected: basis.dim(), got: rho.nrows() });
    }
    let mut keep = keep.to_vec();
    keep.sort();
    keep.dedup();
    let mut kept_sectors = Vec::with_capacity(keep.len());
    for &k in &keep {
        kept_sectors.push(basis.sector(k)?.clone());
    }
    let reduced = build_basis(kept_sectors)?;
    let traced: Vec<SectorId> =
        (0..basis.sectors().len()).map(SectorId).filter(|k| !keep.contains(k)).collect();
    let key = |i: usize| -> (usize, usize) {
        let kept = keep.iter().enumerate().map(|(p, &k)| basis.local(i, k) * reduced.stride(SectorId(p))).sum();
        let rest = traced.iter().fold(0usize, |acc, &k| acc * basis.sectors()[k.0].kind.dim() + basis.local(i, k));
        (kept, rest)
    };
    let keys: Vec<_> = (0..basis.dim()).map(key).collect();
    let mut out = DMatrix::zeros(reduced.dim(), reduced.dim());
    for j in 0..basis.dim() {
        let (cj, rj) = keys[j];
        for i in 0..basis.dim() {
            let (ci, ri) = keys[i];
            if ri == rj {
                out[(ci, cj)] += rho[(i, j)];
            }
        }
    }
    Ok((reduced, out))
}
