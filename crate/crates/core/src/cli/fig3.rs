use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{config_hash, load, Sweep};
use super::output::Table;
use super::{CliError, CommonArgs, Outcome};
use crate::effective::{longitudinal_coupling, qubit_splitting};
use crate::models::DeviceParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig3Config {
    /// Panels (a), (d): `delta/t` at fixed `t`.
    pub delta_over_t: Sweep,
    /// Panels (b), (e): `t/delta` at fixed `delta`.
    pub t_over_delta: Sweep,
    /// Panels (c), (f): flux phase in radians.
    pub phi_x: Sweep,
    /// `t/delta` values of the flux panels.
    pub phi_t_over_delta: Vec<f64>,
    /// Flux phase of the non-flux panels.
    pub phi_x0: f64,
    /// `t_R / t_L`; `t` denotes `t_L`.
    pub t_ratio: f64,
}

impl Default for Fig3Config {
    fn default() -> Self {
        Self {
            delta_over_t: Sweep::log(0.1, 10.0, 81),
            t_over_delta: Sweep::linear(0.01, 2.0, 200),
            phi_x: Sweep::linear(0.0, TAU, 181),
            phi_t_over_delta: vec![1.0, 0.5],
            phi_x0: 0.0,
            t_ratio: 1.0,
        }
    }
}

/// Device with `delta(0) = delta`, `lambda_C - lambda_0 = 1` and no charging
/// energy, so couplings come out in units of `delta_lambda`.
fn device(delta: f64, t: f64, t_ratio: f64, phi: f64) -> DeviceParams {
    DeviceParams {
        e_c: 0.0,
        eps0: delta,
        n_g: 0.0,
        t_l: t,
        t_r: t_ratio * t,
        phi_x: phi,
        lambda_c: 1.0,
        lambda_0: 0.0,
        omega_r: 1.0,
        kappa: 0.0,
    }
}

/// `[g_z exact, g_z small-t, g_z quarter exact, g_z quarter small-t, w_q exact, w_q small-t]`.
fn point(p: &DeviceParams) -> Result<[f64; 6], CliError> {
    let g = longitudinal_coupling(p)?;
    let (w, w_small) = qubit_splitting(p)?;
    Ok([g.exact, g.small_t, g.quarter, g.small_t_quarter, w, w_small])
}

const GZ_COLUMNS: [&str; 4] = ["gz_exact", "gz_small_t", "gz_quarter_exact", "gz_quarter_small_t"];
const WQ_COLUMNS: [&str; 2] = ["wq_exact", "wq_small_t"];

fn rows(xs: &[f64], f: impl Fn(f64) -> DeviceParams + Sync) -> Result<Vec<[f64; 6]>, CliError> {
    xs.par_iter().map(|&x| point(&f(x))).collect()
}

pub fn build(cfg: &Fig3Config) -> Result<Vec<(&'static str, Table)>, CliError> {
    if !(cfg.t_ratio.is_finite() && cfg.t_ratio >= 0.0) {
        return Err(CliError::Config("t_ratio must be finite and >= 0".into()));
    }
    if cfg.phi_t_over_delta.is_empty() || cfg.phi_t_over_delta.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(CliError::Config("phi_t_over_delta needs finite values >= 0".into()));
    }
    let dt = cfg.delta_over_t.values("delta_over_t")?;
    if dt.iter().any(|&x| x <= 0.0) {
        return Err(CliError::Config("delta_over_t must be > 0".into()));
    }
    let td = cfg.t_over_delta.values("t_over_delta")?;
    let phis = cfg.phi_x.values("phi_x")?;
    let r = cfg.t_ratio;

    // delta/t sweep at t = 1: g_z / delta_lambda and w_q / t
    let by_delta = rows(&dt, |x| device(x, 1.0, r, cfg.phi_x0))?;
    // t/delta sweep at delta = 1: g_z / delta_lambda and w_q / delta
    let by_t = rows(&td, |x| device(1.0, x, r, cfg.phi_x0))?;
    let by_phi: Vec<Vec<[f64; 6]>> =
        cfg.phi_t_over_delta.iter().map(|&t| rows(&phis, |phi| device(1.0, t, r, phi))).collect::<Result<_, _>>()?;

    let mut a = Table::new(std::iter::once("delta_over_t").chain(GZ_COLUMNS));
    let mut d = Table::new(std::iter::once("delta_over_t").chain(WQ_COLUMNS));
    for (x, v) in dt.iter().zip(&by_delta) {
        a.push(vec![*x, v[0], v[1], v[2], v[3]]);
        d.push(vec![*x, v[4], v[5]]);
    }
    let mut b = Table::new(std::iter::once("t_over_delta").chain(GZ_COLUMNS));
    let mut e = Table::new(std::iter::once("t_over_delta").chain(WQ_COLUMNS));
    for (x, v) in td.iter().zip(&by_t) {
        b.push(vec![*x, v[0], v[1], v[2], v[3]]);
        e.push(vec![*x, v[4], v[5]]);
    }
    let mut c_cols = vec!["phi_x".to_string()];
    let mut f_cols = vec!["phi_x".to_string()];
    for t in &cfg.phi_t_over_delta {
        c_cols.extend(GZ_COLUMNS.iter().map(|n| format!("{n}_t{t}")));
        f_cols.extend(WQ_COLUMNS.iter().map(|n| format!("{n}_t{t}")));
    }
    let mut c = Table::new(c_cols);
    let mut f = Table::new(f_cols);
    for (k, phi) in phis.iter().enumerate() {
        let mut rc = vec![*phi];
        let mut rf = vec![*phi];
        for series in &by_phi {
            rc.extend_from_slice(&series[k][..4]);
            rf.extend_from_slice(&series[k][4..]);
        }
        c.push(rc);
        f.push(rf);
    }
    Ok(vec![
        ("fig3a_gz_vs_delta_over_t.csv", a),
        ("fig3b_gz_vs_t_over_delta.csv", b),
        ("fig3c_gz_vs_phi.csv", c),
        ("fig3d_wq_vs_delta_over_t.csv", d),
        ("fig3e_wq_vs_t_over_delta.csv", e),
        ("fig3f_wq_vs_phi.csv", f),
    ])
}

pub(super) fn run(args: &CommonArgs) -> Result<Outcome, CliError> {
    super::warn_unused(args, "fig3", false);
    let cfg: Fig3Config = load(args.config.as_deref())?;
    let hash = config_hash("fig3", &cfg);
    let mut outputs = Vec::new();
    for (name, table) in build(&cfg)? {
        outputs.push(table.write(&args.out, name, &hash)?);
    }
    Ok(Outcome { outputs, failed: Vec::new() })
}
