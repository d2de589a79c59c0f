//! Gauss-Legendre quadrature of the Gaussian upper tail.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                let mut q0 = 1.0;
                let mut q1 = z;
                for k in 2..=n {
                    let q2 = ((2 * k - 1) as f64 * z * q1 - (k - 1) as f64 * q0) / k as f64;
                    q0 = q1;
                    q1 = q2;
                }
                let dq = n as f64 * (z * q1 - q0) / (z * z - 1.0);
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dq * dq);
                break;
            }
        }
    }
    (x, w)
}

/// `P(Z > a)` for a standard normal `Z` and `a >= 0`, as
/// `phi(a) * int_0^inf exp(-a u - u^2/2) du` on panels of width 1/4.
pub fn normal_tail(a: f64) -> f64 {
    assert!(a >= 0.0);
    let (x, w) = gauss_legendre(24);
    let width = 0.25;
    let mut sum = 0.0;
    for panel in 0..160 {
        let lo = panel as f64 * width;
        for (xi, wi) in x.iter().zip(&w) {
            let u = lo + 0.5 * width * (xi + 1.0);
            sum += 0.5 * width * wi * (-a * u - 0.5 * u * u).exp();
        }
    }
    (-0.5 * a * a).exp() / (2.0 * PI).sqrt() * sum
}
