use num_complex::Complex64;
use serde::Serialize;
use statrs::function::erf::erfc;

use super::ReadoutError;

/// Cavity amplitude under `(i/2) g sigma_z (a^dag - a)` with decay `kappa`,
/// starting from vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Displacement {
    pub alpha: Complex64,
    /// Set when `kappa = 0` and the amplitude grows linearly.
    pub undamped: bool,
}

fn check_sign(s: i8) -> Result<f64, ReadoutError> {
    match s {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(ReadoutError::InvalidParams(format!("qubit sign must be +1 or -1, got {s}"))),
    }
}

/// `alpha(t) = s (g/kappa)(1 - e^{-kappa t/2})`.
pub fn cavity_displacement(g_tilde: f64, kappa: f64, t: f64, s: i8) -> Result<Displacement, ReadoutError> {
    let s = check_sign(s)?;
    if kappa < 0.0 || t < 0.0 {
        return Err(ReadoutError::InvalidParams("need kappa >= 0 and t >= 0".into()));
    }
    if kappa == 0.0 {
        return Ok(Displacement { alpha: Complex64::new(s * g_tilde * t / 2.0, 0.0), undamped: true });
    }
    let a = s * g_tilde / kappa * -(-0.5 * kappa * t).exp_m1();
    Ok(Displacement { alpha: Complex64::new(a, 0.0), undamped: false })
}

/// `1 - (1 - e^{-x})/x`, accurate for small `x`.
fn ramp_factor(x: f64) -> f64 {
    if x < 1e-3 {
        x * (0.5 - x * (1.0 / 6.0 - x * (1.0 / 24.0 - x / 120.0)))
    } else {
        1.0 + (-x).exp_m1() / x
    }
}

/// Mean and standard deviation of the integrated homodyne signal.
pub fn signal_stats(g_tilde: f64, kappa: f64, tau: f64) -> Result<(f64, f64), ReadoutError> {
    if !(kappa > 0.0 && tau > 0.0) {
        return Err(ReadoutError::InvalidParams("need kappa > 0 and tau > 0".into()));
    }
    let mu = 2.0 * g_tilde.abs() * tau * ramp_factor(0.5 * kappa * tau);
    Ok((mu, (kappa * tau).sqrt()))
}

/// `1 - F = erfc(mu / (sqrt(2) sigma)) / 2`, without cancellation.
pub fn assignment_infidelity(g_tilde: f64, kappa: f64, tau: f64) -> Result<f64, ReadoutError> {
    let (mu, sigma) = signal_stats(g_tilde, kappa, tau)?;
    Ok(0.5 * erfc(mu / (std::f64::consts::SQRT_2 * sigma)))
}

pub fn assignment_fidelity(g_tilde: f64, kappa: f64, tau: f64) -> Result<f64, ReadoutError> {
    Ok(1.0 - assignment_infidelity(g_tilde, kappa, tau)?)
}

/// Integrated-signal statistics at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReadoutStats {
    pub g_tilde: f64,
    pub kappa: f64,
    pub tau: f64,
    pub mu: f64,
    pub sigma: f64,
    pub fidelity: f64,
    pub infidelity: f64,
}

impl ReadoutStats {
    pub fn new(g_tilde: f64, kappa: f64, tau: f64) -> Result<Self, ReadoutError> {
        let (mu, sigma) = signal_stats(g_tilde, kappa, tau)?;
        let infidelity = assignment_infidelity(g_tilde, kappa, tau)?;
        Ok(Self { g_tilde, kappa, tau, mu, sigma, fidelity: 1.0 - infidelity, infidelity })
    }
}

/// Shortest `tau` with `1 - F(tau) <= target`, searched up to `tau_max`
/// (default `1e4 / kappa`).
pub fn time_to_infidelity(g_tilde: f64, kappa: f64, target: f64, tau_max: Option<f64>) -> Result<f64, ReadoutError> {
    if !(target > 0.0 && target < 0.5) {
        return Err(ReadoutError::InvalidParams("target infidelity must lie in (0, 1/2)".into()));
    }
    if !(kappa > 0.0) {
        return Err(ReadoutError::InvalidParams("need kappa > 0".into()));
    }
    let tau_max = tau_max.unwrap_or(1e4 / kappa);
    let err = |tau: f64| assignment_infidelity(g_tilde, kappa, tau);
    if err(tau_max)? > target {
        return Err(ReadoutError::Unreachable { target, tau_max });
    }
    // geometric bracket, then bisection
    let mut hi = tau_max;
    while hi > 1e-300 && err(0.5 * hi)? <= target {
        hi *= 0.5;
    }
    let mut lo = 0.5 * hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if err(mid)? <= target {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(hi)
}
