use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModelError;

/// Single-qubit device parameters. All energies are angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    pub e_c: f64,
    /// Barrier orbital energy with any dot charging offset already folded in.
    pub eps0: f64,
    #[serde(default)]
    pub n_g: f64,
    pub t_l: f64,
    pub t_r: f64,
    /// External flux phase in radians.
    #[serde(default)]
    pub phi_x: f64,
    #[serde(default)]
    pub lambda_c: f64,
    #[serde(default)]
    pub lambda_0: f64,
    pub omega_r: f64,
    #[serde(default)]
    pub kappa: f64,
}

impl DeviceParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let finite = [
            self.e_c, self.eps0, self.n_g, self.t_l, self.t_r, self.phi_x, self.lambda_c, self.lambda_0, self.omega_r,
            self.kappa,
        ]
        .iter()
        .all(|x| x.is_finite());
        if !finite {
            return Err(ModelError::InvalidParams("non-finite device parameter".into()));
        }
        if self.t_l < 0.0 || self.t_r < 0.0 {
            return Err(ModelError::InvalidParams("tunnel amplitudes must be >= 0".into()));
        }
        if self.kappa < 0.0 {
            return Err(ModelError::InvalidParams("kappa must be >= 0".into()));
        }
        if self.omega_r <= 0.0 {
            return Err(ModelError::InvalidParams("omega_r must be > 0".into()));
        }
        Ok(())
    }

    /// Energy to move an electron from the island into the barrier in charge
    /// sector `n`.
    pub fn delta(&self, n: i32) -> f64 {
        self.eps0 - 2.0 * self.e_c * (n as f64 - self.n_g) + self.e_c
    }
}

/// Modulation of one qubit's longitudinal coupling,
/// `g(t) = g_bar + g_tilde cos(omega_m t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingDrive {
    #[serde(default)]
    pub g_bar: f64,
    pub g_tilde: f64,
    pub omega_m: f64,
    #[serde(default)]
    pub phase: f64,
}

impl CouplingDrive {
    pub fn at(&self, t: f64) -> f64 {
        self.g_bar + self.g_tilde * (self.omega_m * t + self.phase).cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitParams {
    #[serde(default)]
    pub omega_q1: f64,
    #[serde(default)]
    pub omega_q2: f64,
    pub omega_r: f64,
    #[serde(default)]
    pub kappa: f64,
    pub drive1: CouplingDrive,
    pub drive2: CouplingDrive,
}

impl TwoQubitParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.omega_r <= 0.0 || self.kappa < 0.0 {
            return Err(ModelError::InvalidParams("need omega_r > 0 and kappa >= 0".into()));
        }
        if self.drive1.omega_m <= 0.0 || self.drive2.omega_m <= 0.0 {
            return Err(ModelError::InvalidParams("modulation frequencies must be > 0".into()));
        }
        Ok(())
    }
}

/// Two-island, four-Majorana parity-measurement device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourMzmParams {
    pub e_l: f64,
    pub e_r: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub t1: Complex64,
    pub t2: Complex64,
    pub t3: Complex64,
    pub t4: Complex64,
    #[serde(default)]
    pub lambda_l: f64,
    #[serde(default)]
    pub lambda_r: f64,
    #[serde(default)]
    pub lambda_1: f64,
    #[serde(default)]
    pub lambda_2: f64,
    #[serde(default = "one")]
    pub omega_r: f64,
    /// Charging energy for occupying both barriers at once. Zero in the
    /// plain model.
    #[serde(default)]
    pub u12: f64,
}

fn one() -> f64 {
    1.0
}

impl FourMzmParams {
    /// Symmetric device with equal real tunnel amplitudes `t`.
    pub fn symmetric(e: f64, eps: f64, t: f64) -> Self {
        let t = Complex64::new(t, 0.0);
        Self {
            e_l: e,
            e_r: e,
            eps1: eps,
            eps2: eps,
            t1: t,
            t2: t,
            t3: t,
            t4: t,
            lambda_l: 0.0,
            lambda_r: 0.0,
            lambda_1: 0.0,
            lambda_2: 0.0,
            omega_r: 1.0,
            u12: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.e_l > 0.0 && self.e_r > 0.0 && self.eps1 > 0.0 && self.eps2 > 0.0) {
            return Err(ModelError::InvalidParams("E_L, E_R, eps1, eps2 must be > 0".into()));
        }
        if self.u12 < 0.0 {
            return Err(ModelError::InvalidParams("u12 must be >= 0".into()));
        }
        Ok(())
    }
}

/// Qubit plus resonator with a modulated longitudinal coupling
/// `i g(t) (sigma_z + 1)(a^dag - a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongitudinalParams {
    #[serde(default)]
    pub omega_q: f64,
    pub omega_r: f64,
    pub kappa: f64,
    pub drive: CouplingDrive,
}
