use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{config_hash, load};
use super::output::{CheckResult, RunReport};
use super::{CliError, CommonArgs, Outcome};
use crate::effective::{
    adjudicate_gz, assembled_sector_spectrum, block_spectrum, four_mzm_coefficients, four_mzm_loop_coefficients,
};
use crate::models::{build_ideal_readout, CouplingDrive, DeviceParams, FourMzmParams, TwoQubitParams};
use crate::readout::{basis_state, cavity_displacement, lindblad_evolve, simulate_zz_phase, LindbladOptions};
use crate::sw::{classical_field_b_oracle, sw_p4_coefficient};

/// Checks run by `verify` with their default tolerances.
pub const DEFAULT_TOLERANCES: [(&str, f64); 7] = [
    ("block_spectrum", 1e-10),
    ("gz_adjudication", 1e-3),
    ("four_mzm_a_sw", 1e-3),
    ("four_mzm_b_oracle", 1e-4),
    ("four_mzm_b_uniform", 1e-12),
    ("lindblad_displacement", 1e-6),
    ("zz_phase_rate", 0.05),
];

/// Normalization the library uses for `g_z`.
const CANONICAL_GZ: &str = "g_f/2";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// Overrides of the default check tolerances by check name.
    pub tolerances: BTreeMap<String, f64>,
    /// Seed of the random block-spectrum draws.
    pub seed: u64,
    pub block_draws: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tolerances: BTreeMap::new(), seed: 0, block_draws: 100 }
    }
}

impl VerifyConfig {
    fn tolerance(&self, name: &str) -> f64 {
        self.tolerances.get(name).copied().unwrap_or_else(|| {
            DEFAULT_TOLERANCES.iter().find(|(n, _)| *n == name).expect("known check").1
        })
    }

    fn validate(&self) -> Result<(), CliError> {
        for (k, v) in &self.tolerances {
            if !DEFAULT_TOLERANCES.iter().any(|(n, _)| n == k) {
                return Err(CliError::Config(format!("unknown check `{k}` in tolerances")));
            }
            if !(*v >= 0.0) {
                return Err(CliError::Config(format!("tolerance `{k}` must be >= 0")));
            }
        }
        if self.block_draws == 0 {
            return Err(CliError::Config("block_draws must be >= 1".into()));
        }
        Ok(())
    }
}

/// Random device with `|delta(n)|` bounded away from zero.
fn draw_device(rng: &mut ChaCha8Rng, n: i32) -> DeviceParams {
    loop {
        let p = DeviceParams {
            e_c: rng.random_range(0.1..2.0),
            eps0: rng.random_range(-3.0..3.0),
            n_g: rng.random_range(-0.5..0.5),
            t_l: rng.random_range(0.0..1.5),
            t_r: rng.random_range(0.0..1.5),
            phi_x: rng.random_range(0.0..TAU),
            lambda_c: 0.0,
            lambda_0: 0.0,
            omega_r: 1.0,
            kappa: 0.0,
        };
        if p.delta(n).abs() > 1e-2 {
            return p;
        }
    }
}

fn check_block_spectrum(cfg: &VerifyConfig) -> Result<CheckResult, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    for _ in 0..cfg.block_draws {
        let n = rng.random_range(-1..=1);
        let p = draw_device(&mut rng, n);
        let num = assembled_sector_spectrum(n, &p)?;
        let mut want = block_spectrum(n, &p)?.eigenvalues();
        want.sort_by(f64::total_cmp);
        let scale = want.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (a, b) in num.iter().zip(&want) {
            worst = worst.max((a - b).abs() / scale);
        }
    }
    let tol = cfg.tolerance("block_spectrum");
    Ok(CheckResult::absolute(
        "block_spectrum",
        worst,
        0.0,
        tol,
        format!("{} random sectors, error relative to the largest |eigenvalue|", cfg.block_draws),
    ))
}

fn check_gz(cfg: &VerifyConfig) -> Result<(CheckResult, CheckResult, String), CliError> {
    let devices: Vec<DeviceParams> = [0.1, 0.5, 1.0]
        .iter()
        .map(|&r| {
            let base = DeviceParams {
                e_c: 2.0,
                eps0: 0.5,
                n_g: 0.05,
                t_l: 0.0,
                t_r: 0.0,
                phi_x: 0.4,
                lambda_c: 0.0,
                lambda_0: 0.003,
                omega_r: 1.0,
                kappa: 0.0,
            };
            let d = base.delta(0).abs();
            DeviceParams { t_l: r * d, t_r: 0.8 * r * d, lambda_c: 0.003 + d / 200.0, ..base }
        })
        .collect();
    let tol = cfg.tolerance("gz_adjudication");
    let adj = adjudicate_gz(&devices, tol)?;
    let worst_half = adj.points.iter().map(|p| p.rel_err_half).fold(0.0, f64::max);
    let worst_quarter = adj.points.iter().map(|p| p.rel_err_quarter).fold(0.0, f64::max);
    let mut check = CheckResult::absolute(
        "gz_adjudication",
        worst_half,
        0.0,
        tol,
        format!("oracle selects {} at t/delta = 0.1, 0.5, 1", adj.winner),
    );
    check.passed = adj.winner == CANONICAL_GZ;
    let info = CheckResult::absolute("gz_quarter_normalization", worst_quarter, 0.0, tol, "g_f/4 vs oracle").info();
    Ok((check, info, adj.winner))
}

fn four_mzm_device(lambdas: [f64; 4]) -> FourMzmParams {
    // t / (E + eps) = 0.02
    let mut p = FourMzmParams::symmetric(10.0, 5.0, 0.3);
    p.lambda_l = lambdas[0];
    p.lambda_r = lambdas[1];
    p.lambda_1 = lambdas[2];
    p.lambda_2 = lambdas[3];
    p
}

fn check_four_mzm(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, CliError> {
    let p = four_mzm_device([0.0, 0.0, 1.0, 1.0]);
    let sw = sw_p4_coefficient(&p)?;
    let full = four_mzm_loop_coefficients(&p)?;
    let two_orderings = four_mzm_coefficients(&p)?;
    let b = classical_field_b_oracle(&p, None)?;
    let uniform = classical_field_b_oracle(&four_mzm_device([1.0; 4]), None)?;
    Ok(vec![
        CheckResult::relative(
            "four_mzm_a_sw",
            sw,
            full.p4_coefficient(),
            cfg.tolerance("four_mzm_a_sw"),
            "fourth-order SW vs all-orderings closed form, t/(E+eps) = 0.02",
        ),
        CheckResult::relative(
            "four_mzm_b_oracle",
            b,
            full.b.re,
            cfg.tolerance("four_mzm_b_oracle"),
            "classical-field derivative vs all-orderings closed form",
        ),
        CheckResult::absolute(
            "four_mzm_b_uniform",
            uniform,
            0.0,
            cfg.tolerance("four_mzm_b_uniform"),
            "B with all lambda equal",
        ),
        CheckResult::relative(
            "four_mzm_a_two_orderings",
            sw,
            two_orderings.p4_coefficient(),
            cfg.tolerance("four_mzm_a_sw"),
            "SW vs the two-ordering formula",
        )
        .info(),
        CheckResult::relative(
            "four_mzm_b_two_orderings",
            b,
            two_orderings.b.re,
            cfg.tolerance("four_mzm_b_oracle"),
            "oracle vs the two-ordering formula",
        )
        .info(),
    ])
}

fn check_displacement(cfg: &VerifyConfig) -> Result<CheckResult, CliError> {
    let (g, k) = (1.0, 1.0);
    let m = build_ideal_readout(g, 20)?;
    let rho = basis_state(&m, &[1, 0])?;
    let times = [0.0, 0.5, 1.0, 2.0, 5.0];
    let rec = lindblad_evolve(&m, k, &rho, &times, &LindbladOptions::default())?;
    let mut worst = 0.0f64;
    for (i, &t) in times.iter().enumerate().skip(1) {
        let want = cavity_displacement(g, k, t, 1)?.alpha;
        worst = worst.max((rec.a[i] - want).norm() / want.norm());
    }
    Ok(CheckResult::absolute(
        "lindblad_displacement",
        worst,
        0.0,
        cfg.tolerance("lindblad_displacement"),
        "ideal model vs closed-form displacement at kappa t = 0.5, 1, 2, 5",
    ))
}

fn check_zz(cfg: &VerifyConfig) -> Result<Vec<CheckResult>, CliError> {
    let d = CouplingDrive { g_bar: 0.0, g_tilde: 0.1, omega_m: 22.0, phase: 0.0 };
    let p = TwoQubitParams { omega_q1: 0.3, omega_q2: 0.2, omega_r: 20.0, kappa: 0.0, drive1: d, drive2: d };
    let run = simulate_zz_phase(&p, 6, Some(40.0), 2, &LindbladOptions::default())?;
    let tol = cfg.tolerance("zz_phase_rate");
    Ok(vec![
        CheckResult::relative(
            "zz_phase_rate",
            run.j_numeric,
            run.j_exact,
            tol,
            "ZZ rate from the time-domain phase vs the exact polaron coefficient",
        ),
        CheckResult::relative("zz_rate_vs_rwa_formula", run.j_numeric, run.j_rwa, tol, "vs g1 g2/(omega_m - omega_r)")
            .info(),
    ])
}

pub fn build(cfg: &VerifyConfig) -> Result<(Vec<CheckResult>, String), CliError> {
    cfg.validate()?;
    let mut checks = vec![check_block_spectrum(cfg)?];
    let (gz, gz_info, winner) = check_gz(cfg)?;
    checks.push(gz);
    checks.push(gz_info);
    checks.extend(check_four_mzm(cfg)?);
    checks.push(check_displacement(cfg)?);
    checks.extend(check_zz(cfg)?);
    Ok((checks, winner))
}

pub(super) fn run(args: &CommonArgs) -> Result<Outcome, CliError> {
    super::warn_unused(args, "verify", true);
    let started = Instant::now();
    let mut cfg: VerifyConfig = load(args.config.as_deref())?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let hash = config_hash("verify", &cfg);
    let (checks, winner) = build(&cfg)?;
    let mut report = RunReport::new("verify", &cfg, &hash);
    report.canonical_g_z = Some(format!("g_z = {winner}"));
    report.checks = checks;
    report.finish(started);
    super::print_checks(&report);
    let path = report.write(&args.out, "verify_report.json")?;
    Ok(Outcome { outputs: vec![path], failed: report.failed().into_iter().map(String::from).collect() })
}
