use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{finish, FourMzmParams, ModelBundle, ModelError, Resonator, ResonatorCoupling};
use crate::algebra::{
    boson_annihilator, build_basis, fermion_annihilator, island_charge_ops, majorana_pair, number, parity,
    OperatorMatrix, Sector, SectorId, C64,
};

pub const ISLAND_L: SectorId = SectorId(0);
pub const ISLAND_R: SectorId = SectorId(1);
pub const BARRIER_1: SectorId = SectorId(2);
pub const BARRIER_2: SectorId = SectorId(3);
/// Fermion built from `g1, g2`.
pub const PAIR_12: SectorId = SectorId(4);
/// Fermion built from `g3, g4`.
pub const PAIR_34: SectorId = SectorId(5);
pub const RESONATOR: SectorId = SectorId(6);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourMzmTruncation {
    pub charge_min: i32,
    pub charge_max: i32,
    /// Photon cutoff; `None` leaves the resonator out entirely.
    pub n_max: Option<usize>,
}

impl Default for FourMzmTruncation {
    fn default() -> Self {
        Self { charge_min: -1, charge_max: 1, n_max: None }
    }
}

/// Two islands, two barrier orbitals and four Majoranas, optionally with a
/// resonator.
///
/// `H_T = S_L (t1 g1 b1 + t2 g2 b2) + S_R (t3 g3 b1 + t4 g4 b2) + h.c.` where
/// `S` raises the island charge by one.
pub fn build_four_mzm(p: &FourMzmParams, trunc: &FourMzmTruncation) -> Result<ModelBundle, ModelError> {
    p.validate()?;
    if trunc.charge_min > -1 || trunc.charge_max < 1 {
        return Err(ModelError::InvalidTruncation("charge ranges must cover {-1, 0, 1}".into()));
    }
    let mut sectors = vec![
        Sector::charge("island_l", trunc.charge_min, trunc.charge_max),
        Sector::charge("island_r", trunc.charge_min, trunc.charge_max),
        Sector::fermion("barrier_1"),
        Sector::fermion("barrier_2"),
        Sector::fermion("pair_12"),
        Sector::fermion("pair_34"),
    ];
    if let Some(n) = trunc.n_max {
        if n < 1 {
            return Err(ModelError::InvalidTruncation("boson cutoff must be >= 1".into()));
        }
        sectors.push(Sector::boson("resonator", n));
    }
    let basis = Arc::new(build_basis(sectors)?);
    let (nl, sl) = island_charge_ops(&basis, ISLAND_L)?;
    let (nr, sr) = island_charge_ops(&basis, ISLAND_R)?;
    let b1 = fermion_annihilator(&basis, BARRIER_1)?;
    let b2 = fermion_annihilator(&basis, BARRIER_2)?;
    let n1 = number(&basis, BARRIER_1)?;
    let n2 = number(&basis, BARRIER_2)?;
    let (g1, g2) = majorana_pair(&basis, PAIR_12)?;
    let (g3, g4) = majorana_pair(&basis, PAIR_34)?;

    let h0 = OperatorMatrix::diagonal(basis.clone(), |i| {
        let l = basis.value(i, ISLAND_L) as f64;
        let r = basis.value(i, ISLAND_R) as f64;
        let o1 = basis.value(i, BARRIER_1) as f64;
        let o2 = basis.value(i, BARRIER_2) as f64;
        C64::new(p.e_l * l * l + p.e_r * r * r + p.eps1 * o1 + p.eps2 * o2 + p.u12 * o1 * o2, 0.0)
    });
    let hop = |s: &OperatorMatrix, g: &OperatorMatrix, b: &OperatorMatrix, t: C64| (&(s * g) * b).scale(t);
    let h_t = [
        hop(&sl, &g1, &b1, p.t1),
        hop(&sl, &g2, &b2, p.t2),
        hop(&sr, &g3, &b1, p.t3),
        hop(&sr, &g4, &b2, p.t4),
    ]
    .iter()
    .fold(OperatorMatrix::zeros(basis.clone()), |acc, x| &acc + x);
    let h_system = &h0 + &(&h_t + &h_t.adjoint());

    let coupling = [(&nl, p.lambda_l), (&nr, p.lambda_r), (&n1, p.lambda_1), (&n2, p.lambda_2)]
        .iter()
        .fold(OperatorMatrix::zeros(basis.clone()), |acc, (op, l)| &acc + &op.scale_re(*l));

    let mut obs = BTreeMap::new();
    let resonator = match trunc.n_max {
        Some(_) => {
            let a = boson_annihilator(&basis, RESONATOR)?;
            obs.insert("a".into(), a.clone());
            Some(Resonator {
                omega_r: p.omega_r,
                a,
                couplings: vec![ResonatorCoupling { name: "charge".into(), op: coupling.clone(), envelope: None }],
            })
        }
        None => None,
    };
    let p4 = &(&(&g1 * &g2) * &g3) * &g4;
    obs.insert("parity_tilde".into(), &p4 * &parity(&basis, &[BARRIER_1, BARRIER_2])?);
    obs.insert("p4".into(), p4);
    obs.insert("coupling".into(), coupling);
    obs.insert("h0".into(), h0);
    obs.insert("h_t".into(), &h_t + &h_t.adjoint());
    obs.insert("N_L".into(), nl);
    obs.insert("N_R".into(), nr);
    obs.insert("n_1".into(), n1);
    obs.insert("n_2".into(), n2);
    let edges = basis.edge_states();
    finish(basis, h_system, vec![], resonator, obs, Some("p4".into()), edges)
}

/// Basis indices of the four-dimensional low-energy space
/// `N_L = N_R = n_1 = n_2 = 0` (photon vacuum if a resonator is present).
pub fn low_subspace(m: &ModelBundle) -> Vec<usize> {
    let b = &m.basis;
    (0..b.dim())
        .filter(|&i| {
            b.value(i, ISLAND_L) == 0
                && b.value(i, ISLAND_R) == 0
                && b.value(i, BARRIER_1) == 0
                && b.value(i, BARRIER_2) == 0
                && (b.sectors().len() <= RESONATOR.0 || b.value(i, RESONATOR) == 0)
        })
        .collect()
}
