use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{config_hash, load};
use super::output::{CheckResult, RunReport, Table};
use super::{CliError, CommonArgs, Outcome};
use crate::effective::coupling_modulation;
use crate::models::{
    build_ideal_readout, build_longitudinal, build_single_qubit_modulated, default_boson_cutoff, logical_state,
    CouplingDrive, DeviceParams, LongitudinalParams, ModelBundle, Modulation, Truncation,
};
use crate::readout::{basis_state, linear_grid, pure_state, separation_run, LindbladOptions, TrajectoryRecord};

fn one() -> f64 {
    1.0
}

fn two() -> f64 {
    2.0
}

fn two_hundred() -> f64 {
    200.0
}

fn half() -> f64 {
    0.5
}

/// Device of the full-model readout default: `delta = 100`, `t/delta = 1/2`,
/// biased at the flux node so the static coupling vanishes.
fn default_device() -> DeviceParams {
    DeviceParams {
        e_c: 50.0,
        eps0: 50.0,
        n_g: 0.0,
        t_l: 50.0,
        t_r: 50.0,
        phi_x: std::f64::consts::PI,
        lambda_c: 4.0,
        lambda_0: 0.0,
        omega_r: 20.0,
        kappa: 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DrivenParameter {
    #[default]
    Flux,
    Eps0,
}

/// Resonant modulation of one device parameter at `omega_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FullDrive {
    #[serde(default)]
    pub parameter: DrivenParameter,
    #[serde(default = "half")]
    pub amp: f64,
    #[serde(default)]
    pub phase: f64,
}

impl Default for FullDrive {
    fn default() -> Self {
        Self { parameter: DrivenParameter::Flux, amp: 0.5, phase: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ReadoutModel {
    /// `(i/2) g_tilde sigma_z (a^dag - a)` in the interaction frame.
    Ideal {
        #[serde(default = "two")]
        g_tilde: f64,
        #[serde(default)]
        n_max: Option<usize>,
    },
    /// `wq/2 sigma_z + wr a^dag a + i g(t)(sigma_z + 1)(a^dag - a)` with
    /// `g(t) = g_bar + g_tilde cos(omega_m t)`; `omega_m` defaults to `omega_r`.
    Longitudinal {
        #[serde(default)]
        omega_q: f64,
        #[serde(default = "two_hundred")]
        omega_r: f64,
        #[serde(default = "one")]
        g_tilde: f64,
        #[serde(default)]
        g_bar: f64,
        #[serde(default)]
        omega_m: Option<f64>,
        #[serde(default)]
        n_max: Option<usize>,
    },
    /// Island, barrier, logical fermion and resonator with a resonant
    /// parameter drive.
    Full {
        #[serde(default = "default_device")]
        device: DeviceParams,
        #[serde(default)]
        drive: FullDrive,
        #[serde(default)]
        truncation: Option<Truncation>,
    },
}

impl Default for ReadoutModel {
    fn default() -> Self {
        ReadoutModel::Ideal { g_tilde: 2.0, n_max: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReadoutTolerances {
    /// Relative tolerance on the displacement separation.
    pub separation: f64,
    /// Absolute bound on the drift of the conserved qubit observable.
    pub qnd_drift: f64,
}

impl Default for ReadoutTolerances {
    fn default() -> Self {
        Self { separation: 0.05, qnd_drift: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReadoutSimConfig {
    pub model: ReadoutModel,
    /// Resonator decay rate; defaults to 1 (0.2 for the full model).
    pub kappa: Option<f64>,
    /// Defaults to `12 / kappa`.
    pub t_final: Option<f64>,
    pub points: usize,
    /// Fixed integration step; defaults to the stability limit.
    pub dt: Option<f64>,
    pub tolerances: ReadoutTolerances,
}

impl Default for ReadoutSimConfig {
    fn default() -> Self {
        Self {
            model: ReadoutModel::default(),
            kappa: None,
            t_final: None,
            points: 121,
            dt: None,
            tolerances: ReadoutTolerances::default(),
        }
    }
}

/// Built model with its two initial states and the modulation depth that
/// sets the predicted separation `2 g_tilde / kappa`.
struct Prepared {
    model: ModelBundle,
    plus: nalgebra::DMatrix<crate::algebra::C64>,
    minus: nalgebra::DMatrix<crate::algebra::C64>,
    g_tilde: f64,
    n_max: usize,
}

fn prepare(model: &ReadoutModel, kappa: f64) -> Result<Prepared, CliError> {
    Ok(match *model {
        ReadoutModel::Ideal { g_tilde, n_max } => {
            let n = n_max.unwrap_or_else(|| default_boson_cutoff(g_tilde / kappa));
            let m = build_ideal_readout(g_tilde, n)?;
            let plus = basis_state(&m, &[1, 0])?;
            let minus = basis_state(&m, &[0, 0])?;
            Prepared { model: m, plus, minus, g_tilde, n_max: n }
        }
        ReadoutModel::Longitudinal { omega_q, omega_r, g_tilde, g_bar, omega_m, n_max } => {
            let drive = CouplingDrive { g_bar, g_tilde, omega_m: omega_m.unwrap_or(omega_r), phase: 0.0 };
            let n = n_max.unwrap_or_else(|| default_boson_cutoff(2.0 * g_tilde / kappa + 2.0 * g_bar.abs() / omega_r));
            let m = build_longitudinal(&LongitudinalParams { omega_q, omega_r, kappa, drive }, n)?;
            let plus = basis_state(&m, &[1, 0])?;
            let minus = basis_state(&m, &[0, 0])?;
            Prepared { model: m, plus, minus, g_tilde, n_max: n }
        }
        ReadoutModel::Full { device, drive, truncation } => {
            let device = DeviceParams { kappa, ..device };
            let w = device.omega_r;
            let modulation = match drive.parameter {
                DrivenParameter::Flux => Modulation::Flux { amp: drive.amp, omega: w, phase: drive.phase },
                DrivenParameter::Eps0 => Modulation::Eps0 { amp: drive.amp, omega: w, phase: drive.phase },
            };
            let g_tilde = coupling_modulation(&device, &modulation)?;
            let trunc = truncation.unwrap_or(Truncation {
                charge_min: -1,
                charge_max: 0,
                n_max: default_boson_cutoff(g_tilde / kappa),
            });
            let m = build_single_qubit_modulated(&device, &trunc, modulation)?;
            let plus = pure_state(&logical_state(&m, 1)?);
            let minus = pure_state(&logical_state(&m, -1)?);
            Prepared { model: m, plus, minus, g_tilde, n_max: trunc.n_max }
        }
    })
}

fn trajectory_table(r: &TrajectoryRecord) -> Table {
    let mut t = Table::new(["t", "re_a", "im_a", "photons", "sigma_z", "purity", "edge_occupancy", "trace_error"]);
    for k in 0..r.times.len() {
        t.push(vec![
            r.times[k],
            r.a[k].re,
            r.a[k].im,
            r.photons[k],
            r.qnd.get(k).copied().unwrap_or(f64::NAN),
            r.purity[k],
            r.edge_occupancy[k],
            r.trace_error[k],
        ]);
    }
    t
}

/// Trajectory tables for both qubit states and the report checks.
pub fn build(cfg: &ReadoutSimConfig) -> Result<(Table, Table, Vec<CheckResult>), CliError> {
    let kappa = cfg.kappa.unwrap_or(match cfg.model {
        ReadoutModel::Full { .. } => 0.2,
        _ => 1.0,
    });
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(CliError::Config("kappa must be > 0".into()));
    }
    if cfg.points < 2 {
        return Err(CliError::Config("points must be >= 2".into()));
    }
    let t_final = cfg.t_final.unwrap_or(12.0 / kappa);
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(CliError::Config("t_final must be > 0".into()));
    }
    let p = prepare(&cfg.model, kappa)?;
    let opts = LindbladOptions { dt: cfg.dt, ..Default::default() };
    let run = separation_run(&p.model, kappa, &p.plus, &p.minus, &linear_grid(0.0, t_final, cfg.points), &opts)?;

    let steady = 2.0 * p.g_tilde.abs() / kappa;
    let predicted = steady * -(-0.5 * kappa * t_final).exp_m1();
    let tol = cfg.tolerances;
    let detail = format!(
        "g_tilde = {:.6e}, kappa = {kappa}, n_max = {}, {} steps of at most {:.3e}",
        p.g_tilde, p.n_max, run.plus.steps, run.plus.dt_max
    );
    let separation = if predicted == 0.0 {
        CheckResult::absolute("separation", run.separation, 0.0, 1e-10, detail)
    } else {
        CheckResult::relative("separation", run.separation, predicted, tol.separation, detail)
    };
    let checks = vec![
        separation,
        CheckResult::absolute("qnd_drift", run.qnd_drift, 0.0, tol.qnd_drift, "largest change of <sigma_z>"),
        CheckResult::relative("steady_separation", run.separation, steady, tol.separation, "2 g_tilde / kappa").info(),
    ];
    Ok((trajectory_table(&run.plus), trajectory_table(&run.minus), checks))
}

pub(super) fn run(args: &CommonArgs) -> Result<Outcome, CliError> {
    super::warn_unused(args, "readout-sim", false);
    let started = Instant::now();
    let cfg: ReadoutSimConfig = load(args.config.as_deref())?;
    let hash = config_hash("readout-sim", &cfg);
    let (plus, minus, checks) = build(&cfg)?;
    let mut outputs = vec![
        plus.write(&args.out, "readout_plus.csv", &hash)?,
        minus.write(&args.out, "readout_minus.csv", &hash)?,
    ];
    let mut report = RunReport::new("readout-sim", &cfg, &hash);
    report.checks = checks;
    report.outputs = outputs.iter().map(|p| p.display().to_string()).collect();
    report.finish(started);
    super::print_checks(&report);
    outputs.push(report.write(&args.out, "readout_report.json")?);
    Ok(Outcome { outputs, failed: report.failed().into_iter().map(String::from).collect() })
}
