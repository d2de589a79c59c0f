use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::{finish, DeviceParams, Drive, Envelope, ModelBundle, ModelError, Resonator, ResonatorCoupling};
use crate::algebra::{
    boson_annihilator, build_basis, fermion_annihilator, island_charge_ops, majorana_pair, number, parity,
    OperatorMatrix, Sector, SectorId, C64,
};

pub const ISLAND: SectorId = SectorId(0);
pub const BARRIER: SectorId = SectorId(1);
pub const LOGICAL: SectorId = SectorId(2);
pub const RESONATOR: SectorId = SectorId(3);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub charge_min: i32,
    pub charge_max: i32,
    pub n_max: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self { charge_min: -2, charge_max: 2, n_max: 15 }
    }
}

/// Photon cutoff large enough to hold a coherent state of amplitude `alpha`.
pub fn default_boson_cutoff(alpha: f64) -> usize {
    let a = alpha.abs();
    15usize.max((6.0 * a * a + 9.0 * a).ceil() as usize)
}

/// Parameter modulation applied on top of the static device.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modulation {
    #[default]
    None,
    /// `eps0 -> eps0 + amp cos(omega t + phase)`.
    Eps0 { amp: f64, omega: f64, #[serde(default)] phase: f64 },
    /// `phi_x -> phi_x + amp cos(omega t + phase)`.
    Flux { amp: f64, omega: f64, #[serde(default)] phase: f64 },
}

pub fn build_single_qubit(p: &DeviceParams, trunc: &Truncation) -> Result<ModelBundle, ModelError> {
    build_single_qubit_modulated(p, trunc, Modulation::None)
}

/// Island, barrier orbital, logical fermion and resonator.
///
/// The logical fermion `f` carries `g_L2 = f + f^dag` and `g_R1 = i(f^dag - f)`.
/// The spectator Majoranas at the outer wire ends are not represented.
pub fn build_single_qubit_modulated(
    p: &DeviceParams,
    trunc: &Truncation,
    modulation: Modulation,
) -> Result<ModelBundle, ModelError> {
    p.validate()?;
    if trunc.charge_min > -1 || trunc.charge_max < 0 {
        return Err(ModelError::InvalidTruncation("charge range must cover {-1, 0}".into()));
    }
    if trunc.n_max < 1 {
        return Err(ModelError::InvalidTruncation("boson cutoff must be >= 1".into()));
    }
    let basis = Arc::new(build_basis(vec![
        Sector::charge("island", trunc.charge_min, trunc.charge_max),
        Sector::fermion("barrier"),
        Sector::fermion("logical"),
        Sector::boson("resonator", trunc.n_max),
    ])?);
    let (n_op, shift) = island_charge_ops(&basis, ISLAND)?;
    let b = fermion_annihilator(&basis, BARRIER)?;
    let nb = number(&basis, BARRIER)?;
    let nf = number(&basis, LOGICAL)?;
    let (g_l2, g_r1) = majorana_pair(&basis, LOGICAL)?;
    let a = boson_annihilator(&basis, RESONATOR)?;
    let id = OperatorMatrix::identity(basis.clone());

    let charging = OperatorMatrix::diagonal(basis.clone(), |i| {
        let x = basis.value(i, ISLAND) as f64 - p.n_g;
        C64::new(p.e_c * x * x, 0.0)
    });
    let tunnel_l = (&(&shift * &g_l2) * &b).scale(C64::new(0.0, 0.5 * p.t_l));
    let tunnel_r = (&(&shift * &g_r1) * &b).scale_re(-0.5 * p.t_r);
    let h_t = &tunnel_l.scale(C64::from_polar(1.0, 0.5 * p.phi_x)) + &tunnel_r;
    let h_system = &(&charging + &nb.scale_re(p.eps0)) + &(&h_t + &h_t.adjoint());

    let drives = match modulation {
        Modulation::None => vec![],
        Modulation::Eps0 { amp, omega, phase } => vec![Drive {
            name: "eps0".into(),
            op: nb.clone(),
            envelope: Envelope::cosine(0.0, amp, omega, phase),
            add_adjoint: false,
        }],
        Modulation::Flux { amp, omega, phase } => {
            let phi0 = p.phi_x;
            let env = Envelope::new(
                move |t| {
                    let phi = phi0 + amp * (omega * t + phase).cos();
                    C64::from_polar(1.0, 0.5 * phi) - C64::from_polar(1.0, 0.5 * phi0)
                },
                (0.5 * amp.abs()).min(2.0),
                omega.abs() * (0.5 * amp.abs()).ceil().max(1.0) * 2.0,
            );
            vec![Drive { name: "flux".into(), op: tunnel_l.clone(), envelope: env, add_adjoint: true }]
        }
    };

    let coupling = &n_op.scale_re(p.lambda_c) + &nb.scale_re(p.lambda_0);
    let resonator = Resonator {
        omega_r: p.omega_r,
        a: a.clone(),
        couplings: vec![ResonatorCoupling { name: "charge".into(), op: coupling, envelope: None }],
    };

    let pi = parity(&basis, &[BARRIER, LOGICAL])?;
    let mut obs = BTreeMap::new();
    obs.insert("sigma_z".into(), (&g_l2 * &g_r1).scale(C64::new(0.0, 1.0)));
    obs.insert("sigma_z_logical".into(), -&pi);
    obs.insert("parity".into(), pi);
    obs.insert("charge_q".into(), &n_op + &nb);
    obs.insert("N".into(), n_op);
    obs.insert("n_b".into(), nb);
    obs.insert("n_f".into(), nf);
    obs.insert("n_r".into(), &a.adjoint() * &a);
    obs.insert("a".into(), a);
    obs.insert("identity".into(), id);

    // Tunneling connects (N, n_b = 1) to (N + 1, 0) and (N, 0) to (N - 1, 1);
    // those links are cut at the ends of the charge range.
    let edge_states = (0..basis.dim())
        .filter(|&i| {
            let n = basis.value(i, ISLAND);
            let occ = basis.value(i, BARRIER);
            (n == trunc.charge_max && occ == 1)
                || (n == trunc.charge_min && occ == 0)
                || basis.local(i, RESONATOR) == trunc.n_max
        })
        .collect();

    finish(basis, h_system, drives, Some(resonator), obs, Some("sigma_z_logical".into()), edge_states)
}

/// Dressed logical state with `sigma_z_logical = s` in the charge sector
/// `N + n_b = 0`, resonator in vacuum: the eigenstate of the device
/// Hamiltonian in that block with the most weight on `|N = 0, n_b = 0>`.
pub fn logical_state(m: &ModelBundle, s: i8) -> Result<DVector<C64>, ModelError> {
    let n_f = match s {
        1 => 1,
        -1 => 0,
        _ => return Err(ModelError::InvalidParams(format!("logical sign must be +1 or -1, got {s}"))),
    };
    let b = &m.basis;
    if b.sectors().len() != 4 {
        return Err(ModelError::InvalidParams("not a single-qubit model".into()));
    }
    let par = |i: usize| (b.value(i, BARRIER) + b.value(i, LOGICAL)).rem_euclid(2);
    let block: Vec<usize> = (0..b.dim())
        .filter(|&i| b.value(i, RESONATOR) == 0 && b.value(i, ISLAND) + b.value(i, BARRIER) == 0 && par(i) == n_f)
        .collect();
    let anchor = b.index(&[0, 0, n_f, 0]).ok_or_else(|| ModelError::InvalidTruncation("charge 0 missing".into()))?;
    let pos = block.iter().position(|&i| i == anchor).expect("anchor lies in its own block");
    let eig = m.h_system.submatrix(&block).symmetric_eigen();
    let k = (0..block.len())
        .max_by(|&x, &y| eig.eigenvectors[(pos, x)].norm_sqr().total_cmp(&eig.eigenvectors[(pos, y)].norm_sqr()))
        .expect("non-empty block");
    let mut psi = DVector::zeros(b.dim());
    for (r, &i) in block.iter().enumerate() {
        psi[i] = eig.eigenvectors[(r, k)];
    }
    Ok(psi)
}
