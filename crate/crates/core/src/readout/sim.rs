use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use super::{lindblad_evolve, linear_grid, LindbladOptions, ReadoutError, TrajectoryRecord};
use crate::algebra::{partial_trace, SectorId, C64};
use crate::effective::{two_qubit_gate, zz_coefficient};
use crate::models::{build_two_qubit, ModelBundle, TwoQubitParams};

/// Two runs started in opposite eigenstates of the measured observable.
#[derive(Debug, Clone, Serialize)]
pub struct SeparationRun {
    pub alpha_plus: C64,
    pub alpha_minus: C64,
    /// `|alpha_plus - alpha_minus|` at the last time.
    pub separation: f64,
    /// Largest change of the conserved observable over both runs.
    pub qnd_drift: f64,
    pub plus: TrajectoryRecord,
    pub minus: TrajectoryRecord,
}

pub fn separation_run(
    model: &ModelBundle,
    kappa: f64,
    rho_plus: &DMatrix<C64>,
    rho_minus: &DMatrix<C64>,
    times: &[f64],
    opts: &LindbladOptions,
) -> Result<SeparationRun, ReadoutError> {
    let plus = lindblad_evolve(model, kappa, rho_plus, times, opts)?;
    let minus = lindblad_evolve(model, kappa, rho_minus, times, opts)?;
    let last = times.len() - 1;
    let drift = |r: &TrajectoryRecord| r.qnd.iter().map(|q| (q - r.qnd[0]).abs()).fold(0.0, f64::max);
    Ok(SeparationRun {
        alpha_plus: plus.a[last],
        alpha_minus: minus.a[last],
        separation: (plus.a[last] - minus.a[last]).norm(),
        qnd_drift: drift(&plus).max(drift(&minus)),
        plus,
        minus,
    })
}

/// Conditional phase accumulated by the two-qubit model.
#[derive(Debug, Clone, Serialize)]
pub struct ZzPhaseRun {
    pub t_final: f64,
    /// `arg(A_{++} A_{--} / (A_{+-} A_{-+}))` of the qubit sector amplitudes.
    pub conditional_phase: f64,
    /// `|conditional_phase| / 4`, the phase of `exp(-i J Z1 Z2 t)`.
    pub zz_phase: f64,
    pub j_numeric: f64,
    /// Coupling from the rotating-wave closed form.
    pub j_rwa: f64,
    /// Gate time `pi / (4 |j_rwa|)`.
    pub t_gate_rwa: f64,
    /// `Z1 Z2` coefficient of the exact polaron transformation.
    pub j_exact: f64,
    /// Purity of the reduced two-qubit state at `t_final`.
    pub qubit_purity: f64,
    #[serde(skip)]
    pub record: TrajectoryRecord,
}

/// Evolves `|+x, +x> (x) |0>` under the two-qubit model and reads the ZZ
/// phase off the reduced qubit state. `t_final` defaults to the closed-form
/// gate time.
pub fn simulate_zz_phase(
    p: &TwoQubitParams,
    n_max: usize,
    t_final: Option<f64>,
    points: usize,
    opts: &LindbladOptions,
) -> Result<ZzPhaseRun, ReadoutError> {
    let d1 = p.drive1;
    let d2 = p.drive2;
    let (j_rwa, t_gate) = two_qubit_gate(d1.g_tilde, d2.g_tilde, d1.omega_m, p.omega_r).unwrap_or((0.0, f64::INFINITY));
    let j_exact = zz_coefficient(d1.g_tilde, d2.g_tilde, d1.g_bar, d2.g_bar, d1.omega_m, p.omega_r)?;
    let t_final = t_final.unwrap_or(t_gate);
    if !t_final.is_finite() || t_final <= 0.0 {
        return Err(ReadoutError::InvalidParams("no finite gate time; give t_final".into()));
    }
    let m = build_two_qubit(p, n_max)?;
    let d = m.basis.dim();
    let photons = n_max + 1;
    let mut psi = nalgebra::DVector::<C64>::zeros(d);
    for q in 0..4 {
        psi[q * photons] = C64::new(0.5, 0.0);
    }
    let rho0 = &psi * psi.adjoint();
    let rec = lindblad_evolve(&m, p.kappa, &rho0, &linear_grid(0.0, t_final, points.max(2)), opts)?;
    let (_, rq) = partial_trace(&m.basis, &rec.final_state, &[SectorId(0), SectorId(1)])?;
    // index 2 n1 + n2; Z = +1 when the mode is occupied
    let (pp, pm, mp, mm) = (3, 2, 1, 0);
    let amp = |s: usize| rq[(s, pp)];
    let ratio = amp(pp) * amp(mm) / (amp(pm) * amp(mp));
    let cond = ratio.arg();
    let purity = rq.iter().map(|z| z.norm_sqr()).sum();
    Ok(ZzPhaseRun {
        t_final,
        conditional_phase: cond,
        zz_phase: cond.abs() / 4.0,
        j_numeric: -cond / (4.0 * t_final),
        j_rwa,
        t_gate_rwa: t_gate,
        j_exact,
        qubit_purity: purity,
        record: rec,
    })
}

/// Target phase of the ZZ gate.
pub const ZZ_TARGET: f64 = PI / 4.0;
