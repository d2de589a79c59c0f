use std::collections::BTreeMap;
use std::sync::Arc;

use super::{finish, CouplingDrive, Envelope, ModelBundle, ModelError, Resonator, ResonatorCoupling, TwoQubitParams};
use crate::algebra::{boson_annihilator, build_basis, majorana_pair, Sector, SectorId, C64};

fn coupling_envelope(d: &CouplingDrive) -> Envelope {
    Envelope::cosine(d.g_bar, d.g_tilde, d.omega_m, d.phase)
}

/// Two parity qubits `Z1 = i g1 g2`, `Z2 = i g5 g6` sharing one resonator:
/// `H = w1/2 Z1 + w2/2 Z2 + wr a^dag a + sum_k i g_k(t) Z_k (a^dag - a)`.
pub fn build_two_qubit(p: &TwoQubitParams, n_max: usize) -> Result<ModelBundle, ModelError> {
    p.validate()?;
    if n_max < 1 {
        return Err(ModelError::InvalidTruncation("boson cutoff must be >= 1".into()));
    }
    let basis = Arc::new(build_basis(vec![
        Sector::fermion("q1"),
        Sector::fermion("q2"),
        Sector::boson("resonator", n_max),
    ])?);
    let i = C64::new(0.0, 1.0);
    let (g1, g2) = majorana_pair(&basis, SectorId(0))?;
    let (g5, g6) = majorana_pair(&basis, SectorId(1))?;
    let z1 = (&g1 * &g2).scale(i);
    let z2 = (&g5 * &g6).scale(i);
    let a = boson_annihilator(&basis, SectorId(2))?;

    let h_system = &z1.scale_re(0.5 * p.omega_q1) + &z2.scale_re(0.5 * p.omega_q2);
    let resonator = Resonator {
        omega_r: p.omega_r,
        a: a.clone(),
        couplings: vec![
            ResonatorCoupling { name: "g1".into(), op: z1.clone(), envelope: Some(coupling_envelope(&p.drive1)) },
            ResonatorCoupling { name: "g2".into(), op: z2.clone(), envelope: Some(coupling_envelope(&p.drive2)) },
        ],
    };

    let mut obs = BTreeMap::new();
    obs.insert("z1z2".into(), &z1 * &z2);
    obs.insert("z1".into(), z1);
    obs.insert("z2".into(), z2);
    obs.insert("n_r".into(), &a.adjoint() * &a);
    obs.insert("a".into(), a);
    let edges = basis.edge_states();
    finish(basis, h_system, vec![], Some(resonator), obs, Some("z1z2".into()), edges)
}
