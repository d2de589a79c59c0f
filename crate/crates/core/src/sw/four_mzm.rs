use nalgebra::DMatrix;

use super::{majorana_decompose, restrict, sw_effective, SwError, SwProblem, SwResult};
use crate::algebra::C64;
use crate::models::{build_four_mzm, low_subspace, FourMzmParams, FourMzmTruncation, ModelBundle};

fn model(p: &FourMzmParams) -> Result<ModelBundle, SwError> {
    Ok(build_four_mzm(p, &FourMzmTruncation::default())?)
}

/// Fourth-order effective Hamiltonian of the four-Majorana device on its
/// four-dimensional ground space, with `H0` shifted by `x` times the
/// resonator coupling operator (a classical stand-in for `i(a^dag - a)`).
pub fn four_mzm_sw(p: &FourMzmParams, x: f64, order: usize) -> Result<(ModelBundle, SwResult), SwError> {
    let m = model(p)?;
    let h0 = m.observable("h0").expect("h0 observable");
    let c = m.observable("coupling").expect("coupling observable");
    let h0 = h0 + &c.scale_re(x);
    let v = m.observable("h_t").expect("h_t observable").clone();
    let low = low_subspace(&m);
    let r = sw_effective(&SwProblem::new(h0, v, low, order))?;
    Ok((m, r))
}

/// Coefficient of `g1 g2 g3 g4` in an effective Hamiltonian on the ground space.
pub fn p4_coefficient(m: &ModelBundle, r: &SwResult) -> Result<f64, SwError> {
    let p4 = restrict(m.observable("p4").expect("p4 observable"), &r.low_states);
    let id = DMatrix::<C64>::identity(r.low_states.len(), r.low_states.len());
    let coeffs = majorana_decompose(&r.h_eff, &[("I".into(), id), ("P4".into(), p4)])?;
    Ok(coeffs["P4"].re)
}

/// `P4` coefficient from a fourth-order SW expansion.
pub fn sw_p4_coefficient(p: &FourMzmParams) -> Result<f64, SwError> {
    let (m, r) = four_mzm_sw(p, 0.0, 4)?;
    p4_coefficient(&m, &r)
}

/// `P4` coefficient from exact diagonalization: half the splitting between
/// the lowest states with `P4 (-1)^{n_1 + n_2} = +1` and `-1`.
pub fn exact_p4_coefficient(p: &FourMzmParams) -> Result<f64, SwError> {
    let m = model(p)?;
    let all: Vec<usize> = (0..m.basis.dim()).collect();
    let pt = m.observable("parity_tilde").expect("parity_tilde observable").submatrix(&all);
    let h = m.h_static.submatrix(&all);
    let pe = pt.clone().symmetric_eigen();
    let lowest = |sign: f64| -> f64 {
        let cols: Vec<usize> = (0..all.len()).filter(|&k| (pe.eigenvalues[k] - sign).abs() < 0.5).collect();
        let u = pe.eigenvectors.select_columns(&cols);
        (u.adjoint() * &h * &u).symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(0.5 * (lowest(1.0) - lowest(-1.0)))
}

/// Numerical `Re B` from the derivative of the fourth-order `P4` coefficient
/// with respect to a static shift `x` of `i(a^dag - a)`.
///
/// The effective Hamiltonian holds `-(A + A*) P4 + (B + B*) P4 x`, so with
/// `c(x)` the `P4` coefficient, `Re B = c'(0) / 2`. A five-point central
/// difference is used. `x_step` defaults to `1e-4 min(Delta) / max|lambda|`.
pub fn classical_field_b_oracle(p: &FourMzmParams, x_step: Option<f64>) -> Result<f64, SwError> {
    let lam = [p.lambda_l, p.lambda_r, p.lambda_1, p.lambda_2];
    let lmax = lam.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let dmin = [p.e_l + p.eps1, p.e_l + p.eps2, p.e_r + p.eps1, p.e_r + p.eps2].into_iter().fold(f64::INFINITY, f64::min);
    if lmax == 0.0 {
        return Ok(0.0);
    }
    let h = x_step.unwrap_or(1e-4 * dmin / lmax);
    // every intermediate energy of the loop must stay positive over the stencil
    let (l, r, l1, l2) = (p.lambda_l, p.lambda_r, p.lambda_1, p.lambda_2);
    let levels = [
        (p.e_l + p.eps1, l1 - l),
        (p.e_l + p.eps2, l2 - l),
        (p.e_r + p.eps1, l1 - r),
        (p.e_r + p.eps2, l2 - r),
        (p.e_l + p.e_r, r - l),
        (p.e_l + p.e_r, l - r),
        (p.e_l + p.e_r + p.eps1 + p.eps2 + p.u12, l1 + l2 - l - r),
    ];
    if levels.iter().any(|&(d, s)| d - 2.0 * h * s.abs() <= 0.0) {
        return Err(SwError::DegenerateGap);
    }
    let coef = |x: f64| -> Result<f64, SwError> {
        let (m, r) = four_mzm_sw(p, x, 4)?;
        p4_coefficient(&m, &r)
    };
    let d = (-coef(2.0 * h)? + 8.0 * coef(h)? - 8.0 * coef(-h)? + coef(-2.0 * h)?) / (12.0 * h);
    Ok(0.5 * d)
}

/// Coefficients of `P4` and `P4 i(a^dag - a)` from the quantized-resonator
/// problem at fifth order, i.e. `(-2 Re A, 2 Re B)`. The low space is the
/// charge ground configuration with every photon number up to `n_max`; with
/// `omega_r = 0` this reproduces the static-shift picture. Slow.
pub fn quantized_b_check(p: &FourMzmParams, n_max: usize) -> Result<(f64, f64), SwError> {
    let m = build_four_mzm(p, &FourMzmTruncation { n_max: Some(n_max), ..Default::default() })?;
    let res = m.resonator.as_ref().expect("resonator present");
    let h0 = m.observable("h0").expect("h0 observable") + &(&res.a.adjoint() * &res.a).scale_re(p.omega_r);
    let c = m.observable("coupling").expect("coupling observable");
    let ad = res.a.adjoint();
    let x_op = (&ad - &res.a).scale(C64::new(0.0, 1.0));
    let v = m.observable("h_t").expect("h_t observable") + &(c * &x_op);
    use crate::models::four_mzm_sectors::*;
    let b = &m.basis;
    let low: Vec<usize> = (0..b.dim())
        .filter(|&i| {
            b.value(i, ISLAND_L) == 0
                && b.value(i, ISLAND_R) == 0
                && b.value(i, BARRIER_1) == 0
                && b.value(i, BARRIER_2) == 0
        })
        .collect();
    let r = sw_effective(&SwProblem::new(h0, v, low, 5))?;
    let p4 = restrict(m.observable("p4").expect("p4"), &r.low_states);
    let xr = restrict(&x_op, &r.low_states);
    let px = &p4 * &xr;
    let n = r.low_states.len();
    let coeffs = majorana_decompose(
        &r.h_eff,
        &[("I".into(), DMatrix::identity(n, n)), ("P4".into(), p4.clone()), ("P4X".into(), px)],
    )?;
    Ok((coeffs["P4"].re, coeffs["P4X"].re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::four_mzm_loop_coefficients;
    use num_complex::Complex64;

    fn device(t: f64) -> FourMzmParams {
        let mut p = FourMzmParams::symmetric(10.0, 5.0, t);
        p.lambda_1 = 1.0;
        p.lambda_2 = 1.0;
        p
    }

    #[test]
    fn p4_matches_loop_amplitude() {
        let p = device(0.3);
        let sw = sw_p4_coefficient(&p).unwrap();
        let a = four_mzm_loop_coefficients(&p).unwrap();
        assert!((sw / a.p4_coefficient() - 1.0).abs() < 1e-3, "{sw} vs {}", a.p4_coefficient());
    }

    #[test]
    fn complex_amplitudes() {
        let mut p = device(0.3);
        p.t2 = Complex64::from_polar(0.25, 0.7);
        p.t3 = Complex64::from_polar(0.35, -0.4);
        p.e_r = 12.0;
        p.eps2 = 6.0;
        let sw = sw_p4_coefficient(&p).unwrap();
        let a = four_mzm_loop_coefficients(&p).unwrap().p4_coefficient();
        assert!((sw / a - 1.0).abs() < 2e-3, "{sw} vs {a}");
    }

    #[test]
    fn b_oracle_matches_loop() {
        let p = device(0.3);
        let b = classical_field_b_oracle(&p, None).unwrap();
        let want = four_mzm_loop_coefficients(&p).unwrap().b.re;
        assert!((b / want - 1.0).abs() < 1e-4, "{b} vs {want}");
    }

    #[test]
    fn b_oracle_vanishes_for_equal_couplings() {
        let mut p = device(0.3);
        p.lambda_l = 1.0;
        p.lambda_r = 1.0;
        assert!(classical_field_b_oracle(&p, None).unwrap().abs() < 1e-12);
    }

    #[test]
    fn b_oracle_linear_in_lambda() {
        let mut p = device(0.3);
        p.lambda_2 = 0.0;
        let b1 = classical_field_b_oracle(&p, None).unwrap();
        p.lambda_1 = 2.0;
        let b2 = classical_field_b_oracle(&p, None).unwrap();
        assert!((b2 / b1 - 2.0).abs() < 1e-6);
    }

    #[test]
    fn effective_hamiltonian_is_qnd() {
        let p = device(0.5);
        let (m, r) = four_mzm_sw(&p, 0.0, 4).unwrap();
        let p4 = restrict(m.observable("p4").unwrap(), &r.low_states);
        let comm = &r.h_eff * &p4 - &p4 * &r.h_eff;
        let norm = r.h_eff.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(comm.iter().all(|z| z.norm() <= 1e-10 * norm));
        assert!(r.antihermitian_residual < 1e-12);
    }

    #[test]
    fn fourth_order_error_scaling() {
        let mut pts = Vec::new();
        for r in [0.01, 0.02, 0.04] {
            let p = FourMzmParams::symmetric(10.0, 5.0, 15.0 * r);
            let (a, b) = (sw_p4_coefficient(&p).unwrap(), exact_p4_coefficient(&p).unwrap());
            let err = (a - b).abs();
            pts.push((r.ln(), err.ln()));
        }
        let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);
        assert!(slope >= 5.5, "slope {slope}");
    }

    #[test]
    fn quantized_resonator() {
        let mut p = device(0.3);
        p.omega_r = 0.0;
        let (c, cx) = quantized_b_check(&p, 2).unwrap();
        let l = four_mzm_loop_coefficients(&p).unwrap();
        assert!((c / l.p4_coefficient() - 1.0).abs() < 1e-3);
        assert!((cx / l.p4_coupling() - 1.0).abs() < 1e-3);
    }
}
