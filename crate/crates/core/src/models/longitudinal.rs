use std::collections::BTreeMap;
use std::sync::Arc;

use super::{finish, Envelope, LongitudinalParams, ModelBundle, ModelError, Resonator, ResonatorCoupling};
use crate::algebra::{boson_annihilator, build_basis, majorana_pair, OperatorMatrix, Sector, SectorId, C64};

fn qubit_and_resonator(n_max: usize) -> Result<(Arc<crate::algebra::FockBasis>, OperatorMatrix, OperatorMatrix), ModelError> {
    if n_max < 1 {
        return Err(ModelError::InvalidTruncation("boson cutoff must be >= 1".into()));
    }
    let basis = Arc::new(build_basis(vec![Sector::fermion("qubit"), Sector::boson("resonator", n_max)])?);
    let (g1, g2) = majorana_pair(&basis, SectorId(0))?;
    let z = (&g1 * &g2).scale(C64::new(0.0, 1.0));
    let a = boson_annihilator(&basis, SectorId(1))?;
    Ok((basis, z, a))
}

fn observables(z: &OperatorMatrix, a: &OperatorMatrix) -> BTreeMap<String, OperatorMatrix> {
    let mut obs = BTreeMap::new();
    obs.insert("sigma_z".into(), z.clone());
    obs.insert("n_r".into(), &a.adjoint() * a);
    obs.insert("a".into(), a.clone());
    obs
}

/// Interaction-frame readout model `H = (i/2) g_tilde sigma_z (a^dag - a)`.
pub fn build_ideal_readout(g_tilde: f64, n_max: usize) -> Result<ModelBundle, ModelError> {
    let (basis, z, a) = qubit_and_resonator(n_max)?;
    let resonator = Resonator {
        omega_r: 0.0,
        a: a.clone(),
        couplings: vec![ResonatorCoupling { name: "ideal".into(), op: z.scale_re(0.5 * g_tilde), envelope: None }],
    };
    let obs = observables(&z, &a);
    let edges = basis.edge_states();
    let h = OperatorMatrix::zeros(basis.clone());
    finish(basis, h, vec![], Some(resonator), obs, Some("sigma_z".into()), edges)
}

/// Low-energy qubit model with modulated coupling,
/// `H = wr a^dag a + wq/2 sigma_z + i g(t) (sigma_z + 1)(a^dag - a)`.
pub fn build_longitudinal(p: &LongitudinalParams, n_max: usize) -> Result<ModelBundle, ModelError> {
    if p.omega_r <= 0.0 || p.kappa < 0.0 {
        return Err(ModelError::InvalidParams("need omega_r > 0 and kappa >= 0".into()));
    }
    let (basis, z, a) = qubit_and_resonator(n_max)?;
    let id = OperatorMatrix::identity(basis.clone());
    let d = p.drive;
    let resonator = Resonator {
        omega_r: p.omega_r,
        a: a.clone(),
        couplings: vec![ResonatorCoupling {
            name: "g_z".into(),
            op: &z + &id,
            envelope: Some(Envelope::cosine(d.g_bar, d.g_tilde, d.omega_m, d.phase)),
        }],
    };
    let obs = observables(&z, &a);
    let edges = basis.edge_states();
    finish(basis, z.scale_re(0.5 * p.omega_q), vec![], Some(resonator), obs, Some("sigma_z".into()), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{CouplingDrive, Frame};

    #[test]
    fn ideal_is_hermitian_and_qnd() {
        let m = build_ideal_readout(0.8, 6).unwrap();
        assert!(m.h_static.is_hermitian(1e-15));
        assert_eq!(m.h_static.commutator(m.observable("sigma_z").unwrap()).max_abs(), 0.0);
        assert_eq!(m.basis.dim(), 14);
    }

    #[test]
    fn modulated_generator() {
        let p = LongitudinalParams {
            omega_q: 0.5,
            omega_r: 20.0,
            kappa: 0.1,
            drive: CouplingDrive { g_bar: 0.05, g_tilde: 0.1, omega_m: 20.0, phase: 0.0 },
        };
        let m = build_longitudinal(&p, 5).unwrap();
        let g = m.generator(Frame::Rotating(20.0));
        let h = g.at(0.3);
        assert!(h.is_hermitian(1e-14));
        assert!(h.commutator(m.observable("sigma_z").unwrap()).max_abs() < 1e-15);
        assert!(g.omega_max() > 40.0);
    }
}
