use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::EffectiveError;
use crate::models::{DeviceParams, Modulation};

/// `cos(phi/2)`, exactly zero at `phi = pi (mod 2 pi)`.
pub fn cos_half(phi: f64) -> f64 {
    let r = (phi / (2.0 * PI)).rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        0.0
    } else {
        (PI * r).cos()
    }
}

/// Hybridization energies `f_pm = sqrt(delta^2 + t_L^2 + t_R^2 +- 2 t_L t_R cos(phi/2))`.
///
/// Each radicand is assembled from nonnegative pieces so that neither can
/// lose precision or go negative.
pub fn f_pm(delta: f64, t_l: f64, t_r: f64, phi: f64) -> (f64, f64) {
    let c = cos_half(phi);
    let base = delta * delta + (t_l - t_r) * (t_l - t_r);
    let plus = base + 2.0 * t_l * t_r * (1.0 + c);
    let minus = base + 2.0 * t_l * t_r * (1.0 - c);
    assert!(plus >= 0.0 && minus >= 0.0, "negative radicand in f_pm");
    (plus.sqrt(), minus.sqrt())
}

/// `f_+ - f_-` without subtractive cancellation.
pub fn f_diff(delta: f64, t_l: f64, t_r: f64, phi: f64) -> f64 {
    let (fp, fm) = f_pm(delta, t_l, t_r, phi);
    if fp + fm == 0.0 {
        return 0.0;
    }
    4.0 * t_l * t_r * cos_half(phi) / (fp + fm)
}

/// Complex tunneling combinations `t_pm = t_L e^{i phi/2} +- t_R`.
pub fn t_pm(t_l: f64, t_r: f64, phi: f64) -> (Complex64, Complex64) {
    let c = cos_half(phi);
    let s = (phi / 2.0).sin();
    let tl = Complex64::new(t_l * c, t_l * s);
    (tl + t_r, tl - t_r)
}

fn checked_delta(p: &DeviceParams, n: i32) -> Result<f64, EffectiveError> {
    let d = p.delta(n);
    let scale = p.eps0.abs() + p.e_c.abs() * (1.0 + 2.0 * (n as f64 - p.n_g).abs());
    if d == 0.0 || d.abs() <= 1e-13 * scale {
        return Err(EffectiveError::DegenerateSector { n });
    }
    Ok(d)
}

/// Exact qubit splitting and its small-tunneling approximation
/// `t_L t_R cos(phi/2) / delta`.
pub fn qubit_splitting(p: &DeviceParams) -> Result<(f64, f64), EffectiveError> {
    let d = checked_delta(p, 0)?;
    let exact = 0.5 * d.signum() * f_diff(d, p.t_l, p.t_r, p.phi_x);
    let small = p.t_l * p.t_r * cos_half(p.phi_x) / d;
    Ok((exact, small))
}

/// Longitudinal coupling in its exact and approximate forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LongitudinalCoupling {
    /// `g_f(0) / 2`.
    pub exact: f64,
    /// `g_f(0) / 4`, i.e. `-((lambda_C - lambda_0)/4) d omega_q / d delta`.
    pub quarter: f64,
    /// Leading small-tunneling term of `exact`,
    /// `((lambda_C - lambda_0)/2) t_L t_R cos(phi/2) / delta^2`.
    pub small_t: f64,
    /// `((lambda_C - lambda_0)/4) t_L t_R cos(phi/2) / delta^2`.
    pub small_t_quarter: f64,
}

pub fn longitudinal_coupling(p: &DeviceParams) -> Result<LongitudinalCoupling, EffectiveError> {
    let d = checked_delta(p, 0)?;
    let g_f = block_couplings(0, p)?.g_f;
    let dl = p.lambda_c - p.lambda_0;
    let num = p.t_l * p.t_r * cos_half(p.phi_x);
    Ok(LongitudinalCoupling {
        exact: 0.5 * g_f,
        quarter: 0.25 * g_f,
        small_t: 0.5 * dl * num / (d * d),
        small_t_quarter: 0.25 * dl * num / (d * d),
    })
}

/// Exact spectrum of the four-state charge sector `n`: states
/// `|N = n, n_b = 0>` and `|N = n - 1, n_b = 1>` times the logical fermion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockSpectrum {
    pub n: i32,
    pub delta: f64,
    pub eps_c: f64,
    pub eps_f: f64,
    pub e_n: f64,
    pub alpha_plus: Complex64,
    pub alpha_minus: Complex64,
}

impl BlockSpectrum {
    /// `{E_n, E_n + eps_c, E_n + eps_f, E_n + eps_c + eps_f}`.
    pub fn eigenvalues(&self) -> [f64; 4] {
        [self.e_n, self.e_n + self.eps_c, self.e_n + self.eps_f, self.e_n + self.eps_c + self.eps_f]
    }
}

fn rotation(t: Complex64, delta: f64) -> Complex64 {
    let m = t.norm();
    if m == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let angle = 0.5 * (m / delta).atan();
    let phase = -Complex64::i() * t.conj() / m;
    phase * angle
}

pub fn block_spectrum(n: i32, p: &DeviceParams) -> Result<BlockSpectrum, EffectiveError> {
    let d = checked_delta(p, n)?;
    let (fp, fm) = f_pm(d, p.t_l, p.t_r, p.phi_x);
    let s = d.signum();
    let eps_c = 0.5 * s * (fp + fm);
    let eps_f = 0.5 * s * f_diff(d, p.t_l, p.t_r, p.phi_x);
    let x = n as f64 - p.n_g;
    let e_n = p.e_c * x * x + 0.5 * (d - eps_c - eps_f);
    let (tp, tm) = t_pm(p.t_l, p.t_r, p.phi_x);
    Ok(BlockSpectrum {
        n,
        delta: d,
        eps_c,
        eps_f,
        e_n,
        alpha_plus: rotation(tp, d),
        alpha_minus: rotation(tm, d),
    })
}

/// Resonator couplings of sector `n` after the exact block rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockCouplings {
    pub g_c: f64,
    pub g_f: f64,
    pub w_plus: Complex64,
    pub w_minus: Complex64,
}

pub fn block_couplings(n: i32, p: &DeviceParams) -> Result<BlockCouplings, EffectiveError> {
    let d = checked_delta(p, n)?;
    let (fp, fm) = f_pm(d, p.t_l, p.t_r, p.phi_x);
    let dl = p.lambda_c - p.lambda_0;
    // |d|/f_- - |d|/f_+ = |d| (f_+ - f_-) / (f_+ f_-); the block rotation has
    // cos(2 alpha) = |d| / f, so both couplings are even in d
    let a = d.abs();
    let diff = a * f_diff(d, p.t_l, p.t_r, p.phi_x) / (fp * fm);
    let (tp, tm) = t_pm(p.t_l, p.t_r, p.phi_x);
    let w = |t: Complex64| Complex64::new(0.0, -dl) * t / (2.0 * d);
    Ok(BlockCouplings {
        g_c: -0.5 * dl * (a / fm + a / fp),
        g_f: 0.5 * dl * diff,
        w_plus: w(tp),
        w_minus: w(tm),
    })
}

/// Derived low-energy quantities of the single-qubit device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    pub delta: f64,
    pub f_plus: f64,
    pub f_minus: f64,
    pub omega_q: f64,
    pub g_z: f64,
    pub small_t_omega_q: f64,
    pub small_t_g_z: f64,
    pub g_z_quarter: f64,
}

pub fn effective_params(p: &DeviceParams) -> Result<EffectiveParams, EffectiveError> {
    let (omega_q, small_w) = qubit_splitting(p)?;
    let g = longitudinal_coupling(p)?;
    let delta = p.delta(0);
    let (f_plus, f_minus) = f_pm(delta, p.t_l, p.t_r, p.phi_x);
    Ok(EffectiveParams {
        delta,
        f_plus,
        f_minus,
        omega_q,
        g_z: g.exact,
        small_t_omega_q: small_w,
        small_t_g_z: g.small_t,
        g_z_quarter: g.quarter,
    })
}

/// Modulation depth `g_tilde` of `g_z` under a small parameter drive:
/// `amp |d g_z / d x|` with `x` the driven parameter.
pub fn coupling_modulation(p: &DeviceParams, m: &Modulation) -> Result<f64, EffectiveError> {
    let (amp, shifted): (f64, Box<dyn Fn(f64) -> DeviceParams>) = match *m {
        Modulation::None => return Ok(0.0),
        Modulation::Eps0 { amp, .. } => (amp, Box::new(move |h| DeviceParams { eps0: p.eps0 + h, ..*p })),
        Modulation::Flux { amp, .. } => (amp, Box::new(move |h| DeviceParams { phi_x: p.phi_x + h, ..*p })),
    };
    let g = |h: f64| longitudinal_coupling(&shifted(h)).map(|c| c.exact);
    let scale = match *m {
        Modulation::Flux { .. } => 1.0,
        _ => p.delta(0).abs(),
    };
    let h = 1e-3 * scale;
    // fourth-order central difference
    let d = (8.0 * (g(h)? - g(-h)?) - (g(2.0 * h)? - g(-2.0 * h)?)) / (12.0 * h);
    Ok(amp.abs() * d.abs())
}
