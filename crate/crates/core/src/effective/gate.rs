use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::EffectiveError;

/// Von Klitzing constant in ohms.
pub const R_K: f64 = 25812.807;
/// Elementary charge in coulombs.
pub const E_CHARGE: f64 = 1.602176634e-19;
/// Reduced Planck constant in joule seconds.
pub const HBAR: f64 = 1.054571817e-34;

/// Effective qubit-qubit coupling `J = g1 g2 / (omega_m - omega_r)` and the
/// gate time `pi / (4 |J|)`.
pub fn two_qubit_gate(g1: f64, g2: f64, omega_m: f64, omega_r: f64) -> Result<(f64, f64), EffectiveError> {
    if omega_m == omega_r {
        return Err(EffectiveError::ResonantModulation);
    }
    let j = g1 * g2 / (omega_m - omega_r);
    if j == 0.0 {
        return Err(EffectiveError::NoCoupling);
    }
    Ok((j, PI / (4.0 * j.abs())))
}

/// Coefficient of `Z1 Z2` generated by the modulated couplings
/// `g_k(t) = g_bar_k + g_tilde_k cos(omega_m t)`, without a rotating-wave
/// approximation.
///
/// The modulated part contributes `g1 g2 omega_r / (omega_m^2 - omega_r^2)`
/// and the static part the polaron shift `-2 g_bar1 g_bar2 / omega_r`.
pub fn zz_coefficient(g_tilde1: f64, g_tilde2: f64, g_bar1: f64, g_bar2: f64, omega_m: f64, omega_r: f64) -> Result<f64, EffectiveError> {
    if omega_m.abs() == omega_r.abs() {
        return Err(EffectiveError::ResonantModulation);
    }
    if omega_r == 0.0 {
        return Err(EffectiveError::InvalidParams("omega_r must be nonzero".into()));
    }
    Ok(g_tilde1 * g_tilde2 * omega_r / (omega_m * omega_m - omega_r * omega_r) - 2.0 * g_bar1 * g_bar2 / omega_r)
}

/// How the island coupling capacitance is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Capacitance {
    /// `C_c / C_island` directly.
    Ratio { ratio: f64 },
    /// Coupling capacitance in farads and island charging energy as an
    /// angular frequency, giving `C_island = e^2 / (2 hbar E_C)`.
    Absolute { c_c: f64, e_c: f64 },
}

/// Island-resonator coupling `lambda_C = -omega_r sqrt(pi Z_r / R_K) C_c / C_island`.
pub fn capacitive_coupling(omega_r: f64, z_r: f64, cap: Capacitance) -> Result<f64, EffectiveError> {
    let ratio = match cap {
        Capacitance::Ratio { ratio } => ratio,
        Capacitance::Absolute { c_c, e_c } => {
            if !(c_c > 0.0 && e_c > 0.0) {
                return Err(EffectiveError::InvalidParams("capacitance and E_C must be > 0".into()));
            }
            c_c / (E_CHARGE * E_CHARGE / (2.0 * HBAR * e_c))
        }
    };
    if !(omega_r > 0.0 && z_r > 0.0 && ratio > 0.0) {
        return Err(EffectiveError::InvalidParams("omega_r, Z_r and C_c must be > 0".into()));
    }
    Ok(-omega_r * (PI * z_r / R_K).sqrt() * ratio)
}
