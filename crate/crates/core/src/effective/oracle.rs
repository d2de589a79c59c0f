use nalgebra::DVector;
use serde::Serialize;

use super::{longitudinal_coupling, EffectiveError};
use crate::algebra::C64;
use crate::models::{build_single_qubit, single_qubit_sectors::*, DeviceParams, Truncation};

/// Longitudinal coupling read off the full model.
///
/// The device is diagonalized with the resonator couplings switched off. In
/// the charge sector `N + n_b = 0` the eigenstate of each fermion parity with
/// the largest weight on `|N = 0, n_b = 0>` is a dressed logical state. The coefficient of `sigma_z i(a^dag - a)` is half
/// the difference of the one-photon matrix elements `-i <s,1|V|s,0>` of the
/// interaction `V = i(lambda_C N + lambda_0 n_b)(a^dag - a)` between the two
/// logical states, with `sigma_z = -(-1)^{n_b + n_f}`.
pub fn full_model_coupling_oracle(p: &DeviceParams) -> Result<f64, EffectiveError> {
    let d = p.delta(0);
    let scale = p.eps0.abs() + p.e_c.abs() * (1.0 + 2.0 * p.n_g.abs());
    if d.abs() <= 1e-6 * scale {
        return Err(EffectiveError::DegenerateSector { n: 0 });
    }
    if (p.lambda_0 - p.lambda_c).abs() > d.abs() / 100.0 {
        return Err(EffectiveError::InvalidParams("|lambda_0 - lambda_C| must not exceed |delta|/100".into()));
    }
    let trunc = Truncation { charge_min: -2, charge_max: 2, n_max: 3 };
    let bare = DeviceParams { lambda_c: 0.0, lambda_0: 0.0, ..*p };
    let model = build_single_qubit(&bare, &trunc)?;
    let full = build_single_qubit(p, &trunc)?;
    let basis = &model.basis;

    let q = |i: usize| basis.value(i, ISLAND) + basis.value(i, BARRIER);
    let parity = |i: usize| (basis.value(i, BARRIER) + basis.value(i, LOGICAL)) % 2;

    // coupling operator V with the bare Hamiltonian removed
    let v = &full.h_static - &model.h_static;
    let mut d_sigma = [0.0f64; 2];
    for (slot, par) in [(0usize, 1i32), (1, 0)] {
        // both symmetries are exact, so each (Q = 0, parity) vacuum block can
        // be diagonalized on its own
        let block: Vec<usize> = (0..basis.dim())
            .filter(|&i| basis.value(i, RESONATOR) == 0 && q(i) == 0 && parity(i) == par)
            .collect();
        let anchor = basis.index(&[0, 0, par, 0]).expect("anchor state in basis");
        let pos = block.iter().position(|&i| i == anchor).expect("anchor in block");
        let eig = model.h_static.submatrix(&block).symmetric_eigen();
        let k = (0..block.len())
            .max_by(|&x, &y| {
                let wx = eig.eigenvectors[(pos, x)].norm_sqr();
                let wy = eig.eigenvectors[(pos, y)].norm_sqr();
                wx.partial_cmp(&wy).unwrap()
            })
            .ok_or(EffectiveError::Oracle("empty logical block".into()))?;
        let col = eig.eigenvectors.column(k);
        let mut psi0 = DVector::<C64>::zeros(basis.dim());
        let mut psi1 = DVector::<C64>::zeros(basis.dim());
        for (r, &i) in block.iter().enumerate() {
            psi0[i] = col[r];
            let mut label = basis.label(i);
            label[RESONATOR.0] = 1;
            psi1[basis.index(&label).expect("one-photon partner")] = col[r];
        }
        let m = psi1.dotc(&v.mul_vec(&psi0));
        d_sigma[slot] = (C64::new(0.0, -1.0) * m).re;
    }
    Ok(0.5 * (d_sigma[0] - d_sigma[1]))
}

/// Result of comparing the oracle against the two candidate normalizations.
#[derive(Debug, Clone, Serialize)]
pub struct GzAdjudication {
    /// `"g_f/2"` or `"g_f/4"`, or `"none"` when neither (or both) match.
    pub winner: String,
    pub points: Vec<GzPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GzPoint {
    pub t_over_delta: f64,
    pub oracle: f64,
    pub g_f_half: f64,
    pub g_f_quarter: f64,
    pub rel_err_half: f64,
    pub rel_err_quarter: f64,
}

/// Evaluates the oracle on the given devices and names the normalization
/// matching all of them to relative `tol`.
pub fn adjudicate_gz(devices: &[DeviceParams], tol: f64) -> Result<GzAdjudication, EffectiveError> {
    let mut points = Vec::new();
    for p in devices {
        let oracle = full_model_coupling_oracle(p)?;
        let g = longitudinal_coupling(p)?;
        let rel = |x: f64| (oracle - x).abs() / x.abs().max(f64::MIN_POSITIVE);
        points.push(GzPoint {
            t_over_delta: p.t_l.max(p.t_r) / p.delta(0).abs(),
            oracle,
            g_f_half: g.exact,
            g_f_quarter: g.quarter,
            rel_err_half: rel(g.exact),
            rel_err_quarter: rel(g.quarter),
        });
    }
    let half = points.iter().all(|p| p.rel_err_half <= tol);
    let quarter = points.iter().all(|p| p.rel_err_quarter <= tol);
    let winner = match (half, quarter) {
        (true, false) => "g_f/2",
        (false, true) => "g_f/4",
        _ => "none",
    };
    Ok(GzAdjudication { winner: winner.into(), points })
}

/// Spectrum of the assembled device Hamiltonian in the charge sector
/// `N + n_b = n` (both logical parities, resonator in vacuum), ascending.
pub fn assembled_sector_spectrum(n: i32, p: &DeviceParams) -> Result<[f64; 4], EffectiveError> {
    let bare = DeviceParams { lambda_c: 0.0, lambda_0: 0.0, ..*p };
    let trunc = Truncation { charge_min: (n - 1).min(-1), charge_max: n.max(0), n_max: 1 };
    let m = build_single_qubit(&bare, &trunc)?;
    let b = &m.basis;
    let block: Vec<usize> = (0..b.dim())
        .filter(|&i| b.value(i, RESONATOR) == 0 && b.value(i, ISLAND) + b.value(i, BARRIER) == n)
        .collect();
    let mut ev: Vec<f64> = m.h_system.submatrix(&block).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev.try_into().map_err(|_| EffectiveError::Oracle("charge sector is not four-dimensional".into()))
}
