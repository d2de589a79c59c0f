use num_complex::Complex64;
use serde::Serialize;

use super::EffectiveError;
use crate::models::FourMzmParams;

/// Coefficients of the four-Majorana effective Hamiltonian
/// `-(A + A*) P4 + (B + B*) P4 i(a^dag - a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourMzmCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    /// `Delta_1 .. Delta_6`.
    pub deltas: [f64; 6],
}

impl FourMzmCoefficients {
    /// Coefficient of `P4` in the effective Hamiltonian, `-(A + A*)`.
    pub fn p4_coefficient(&self) -> f64 {
        -2.0 * self.a.re
    }

    /// Coefficient of `P4 i(a^dag - a)`, `B + B*`.
    pub fn p4_coupling(&self) -> f64 {
        2.0 * self.b.re
    }
}

fn deltas(p: &FourMzmParams) -> Result<[f64; 6], EffectiveError> {
    let d = [p.e_l + p.eps1, p.e_l + p.eps2, p.e_r + p.eps1, p.e_r + p.eps2, p.e_l + p.e_r, p.e_l + p.e_r];
    if d.iter().any(|&x| !(x > 0.0)) {
        return Err(EffectiveError::InvalidDenominators);
    }
    Ok(d)
}

/// Closed forms summing the two sequential hop orderings around the loop.
pub fn four_mzm_coefficients(p: &FourMzmParams) -> Result<FourMzmCoefficients, EffectiveError> {
    let d = deltas(p)?;
    let [d1, d2, d3, d4, d5, d6] = d;
    let pa = p.t1 * p.t3.conj() * p.t4.conj() * p.t2;
    let pb = p.t1 * p.t3.conj() * p.t4 * p.t2.conj();
    let a = pa * (1.0 / (d1 * d2 * d5) + 1.0 / (d3 * d4 * d6));
    let (l, r, l1, l2) = (p.lambda_l, p.lambda_r, p.lambda_1, p.lambda_2);
    let b = pb / (d1 * d2 * d5) * ((l1 - l) / d1 + (l2 - l) / d2 + (r - l) / d5)
        + pb / (d3 * d4 * d6) * ((l1 - r) / d3 + (l2 - r) / d4 + (l - r) / d6);
    Ok(FourMzmCoefficients { a, b, deltas: d })
}

/// Coefficients at fourth order in tunneling including every hop ordering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoopCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    /// `Delta_1 .. Delta_6` followed by `Delta_7`, the energy with both barrier
    /// orbitals filled and both islands short one electron.
    pub deltas: [f64; 7],
}

impl LoopCoefficients {
    pub fn p4_coefficient(&self) -> f64 {
        -2.0 * self.a.re
    }

    pub fn p4_coupling(&self) -> f64 {
        2.0 * self.b.re
    }
}

/// Loop amplitude with all six orderings of the four hops.
///
/// Besides the two sequences that pass through an island-to-island charge
/// transfer (`Delta_5`, `Delta_6`), four orderings fill both barriers first and
/// pass through `Delta_7 = E_L + E_R + eps1 + eps2 + u12`. `B` is `-dA/dx`
/// under a static shift `x` of the coupling `i(a^dag - a)`.
pub fn four_mzm_loop_coefficients(p: &FourMzmParams) -> Result<LoopCoefficients, EffectiveError> {
    let [d1, d2, d3, d4, d5, d6] = deltas(p)?;
    let d7 = p.e_l + p.e_r + p.eps1 + p.eps2 + p.u12;
    let dd = [d1, d2, d3, d4, d5, d6, d7];
    let (l, r, l1, l2) = (p.lambda_l, p.lambda_r, p.lambda_1, p.lambda_2);
    let s = [l1 - l, l2 - l, l1 - r, l2 - r, r - l, l - r, l1 + l2 - l - r];
    const PATHS: [[usize; 3]; 6] = [[0, 4, 1], [3, 5, 2], [0, 6, 1], [0, 6, 2], [3, 6, 1], [3, 6, 2]];
    let prod = p.t1 * p.t3.conj() * p.t4 * p.t2.conj();
    let (mut sum_a, mut sum_b) = (0.0, 0.0);
    for path in PATHS {
        let w = 1.0 / path.iter().map(|&k| dd[k]).product::<f64>();
        sum_a += w;
        sum_b += w * path.iter().map(|&k| s[k] / dd[k]).sum::<f64>();
    }
    Ok(LoopCoefficients { a: prod * sum_a, b: prod * sum_b, deltas: dd })
}
