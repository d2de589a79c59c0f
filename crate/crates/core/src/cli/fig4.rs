use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{config_hash, load, Sweep};
use super::output::Table;
use super::{CliError, CommonArgs, Outcome};
use crate::readout::{sample_homodyne, time_to_infidelity, ReadoutError, ReadoutStats};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig4Config {
    pub kappa: f64,
    pub g_over_kappa: Sweep,
    /// Integration times of panel (a), in units of `1/kappa`.
    pub kappa_tau: Vec<f64>,
    /// Target infidelities of panel (b).
    pub targets: Vec<f64>,
    /// Search limit for panel (b), in units of `1/kappa`.
    pub kappa_tau_max: f64,
    /// Monte Carlo shots per qubit state and cell; 0 disables sampling.
    pub samples: u64,
    pub seed: Option<u64>,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Self {
            kappa: 1.0,
            g_over_kappa: Sweep::log(0.1, 10.0, 20),
            kappa_tau: vec![1.0, 2.0],
            targets: vec![1e-3, 1e-6],
            kappa_tau_max: 1e4,
            samples: 0,
            seed: None,
        }
    }
}

/// Independent seed for Monte Carlo cell `k`.
fn cell_seed(seed: u64, k: u64) -> u64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k);
    r.next_u64()
}

pub fn build(cfg: &Fig4Config) -> Result<[(&'static str, Table); 2], CliError> {
    if !(cfg.kappa > 0.0 && cfg.kappa.is_finite()) {
        return Err(CliError::Config("kappa must be > 0".into()));
    }
    if cfg.kappa_tau.is_empty() || cfg.kappa_tau.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(CliError::Config("kappa_tau needs values > 0".into()));
    }
    if cfg.targets.is_empty() || cfg.targets.iter().any(|&x| !(x > 0.0 && x < 0.5)) {
        return Err(CliError::Config("targets must lie in (0, 1/2)".into()));
    }
    if !(cfg.kappa_tau_max > 0.0) {
        return Err(CliError::Config("kappa_tau_max must be > 0".into()));
    }
    let seed = match (cfg.samples, cfg.seed) {
        (0, _) => None,
        (_, Some(s)) => Some(s),
        (_, None) => return Err(CliError::Config("Monte Carlo sampling requires a seed".into())),
    };
    let gs = cfg.g_over_kappa.values("g_over_kappa")?;
    let k = cfg.kappa;

    let mut cols_a = vec!["g_over_kappa".to_string()];
    cols_a.extend(cfg.kappa_tau.iter().map(|kt| format!("infidelity_kt{kt}")));
    if seed.is_some() {
        for kt in &cfg.kappa_tau {
            cols_a.push(format!("mc_infidelity_kt{kt}"));
            cols_a.push(format!("mc_std_error_kt{kt}"));
        }
    }
    let mut a = Table::new(cols_a);
    let n_kt = cfg.kappa_tau.len() as u64;
    for (i, &g) in gs.iter().enumerate() {
        let stats: Vec<ReadoutStats> =
            cfg.kappa_tau.iter().map(|&kt| ReadoutStats::new(g * k, k, kt / k)).collect::<Result<_, _>>()?;
        let mut row = vec![g];
        row.extend(stats.iter().map(|s| s.infidelity));
        if let Some(seed) = seed {
            for (j, s) in stats.iter().enumerate() {
                // both qubit states, one RNG seed each
                let cell = 2 * (i as u64 * n_kt + j as u64);
                let plus = sample_homodyne(s.mu, s.sigma, 1, cfg.samples, cell_seed(seed, cell))?;
                let minus = sample_homodyne(s.mu, s.sigma, -1, cfg.samples, cell_seed(seed, cell + 1))?;
                let n = 2 * cfg.samples;
                let wrong = n - plus.correct - minus.correct;
                let e = wrong as f64 / n as f64;
                row.push(e);
                row.push((e * (1.0 - e) / n as f64).sqrt());
            }
        }
        a.push(row);
    }

    let mut cols_b = vec!["g_over_kappa".to_string()];
    cols_b.extend(cfg.targets.iter().map(|t| format!("kappa_tau_{t:e}")));
    cols_b.extend(cfg.targets.iter().map(|t| format!("unreachable_{t:e}")));
    let mut b = Table::new(cols_b);
    let rows: Vec<Vec<f64>> = gs
        .par_iter()
        .map(|&g| {
            let mut times = Vec::new();
            let mut flags = Vec::new();
            for &target in &cfg.targets {
                match time_to_infidelity(g * k, k, target, Some(cfg.kappa_tau_max / k)) {
                    Ok(tau) => {
                        times.push(k * tau);
                        flags.push(0.0);
                    }
                    Err(ReadoutError::Unreachable { .. }) => {
                        times.push(f64::NAN);
                        flags.push(1.0);
                    }
                    Err(e) => return Err(CliError::from(e)),
                }
            }
            let mut row = vec![g];
            row.extend(times);
            row.extend(flags);
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    for r in rows {
        b.push(r);
    }
    Ok([("fig4a_infidelity.csv", a), ("fig4b_kappa_tau.csv", b)])
}

pub(super) fn run(args: &CommonArgs) -> Result<Outcome, CliError> {
    let mut cfg: Fig4Config = load(args.config.as_deref())?;
    if let Some(s) = args.seed {
        cfg.seed = Some(s);
    }
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    let hash = config_hash("fig4", &cfg);
    let mut outputs = Vec::new();
    for (name, table) in build(&cfg)? {
        outputs.push(table.write(&args.out, name, &hash)?);
    }
    Ok(Outcome { outputs, failed: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panels_are_monotone() {
        let [(_, a), (_, b)] = build(&Fig4Config::default()).unwrap();
        assert_eq!(a.rows.len(), 20);
        for w in a.rows.windows(2) {
            assert!(w[1][1] < w[0][1] && w[1][2] < w[0][2]);
        }
        assert!(a.rows.iter().all(|r| r[2] < r[1]));
        // unreachable cells are flagged, never fatal
        let low = &b.rows[0];
        assert!(low[1].is_finite() && low[3] == 0.0);
    }

    #[test]
    fn inverse_time_row() {
        let cfg = Fig4Config { g_over_kappa: Sweep::linear(5.0, 6.0, 2), ..Default::default() };
        let [_, (_, b)] = build(&cfg).unwrap();
        assert!((b.rows[0][2] - 1.9).abs() < 0.05);
    }

    #[test]
    fn unreachable_is_flagged() {
        let cfg = Fig4Config { g_over_kappa: Sweep::linear(0.001, 0.002, 2), kappa_tau_max: 1.0, ..Default::default() };
        let [_, (_, b)] = build(&cfg).unwrap();
        assert!(b.rows[0][1].is_nan() && b.rows[0][3] == 1.0);
    }

    #[test]
    fn sampling_needs_seed() {
        let cfg = Fig4Config { samples: 10, ..Default::default() };
        assert!(matches!(build(&cfg), Err(CliError::Config(_))));
    }

    #[test]
    fn monte_carlo_columns() {
        let cfg = Fig4Config {
            g_over_kappa: Sweep::linear(0.5, 1.0, 2),
            samples: 100_000,
            seed: Some(3),
            ..Default::default()
        };
        let [(_, a), _] = build(&cfg).unwrap();
        assert_eq!(a.columns.len(), 7);
        for r in &a.rows {
            for j in 0..2 {
                let (exact, mc, se) = (r[1 + j], r[3 + 2 * j], r[4 + 2 * j]);
                assert!((mc - exact).abs() < 5.0 * se, "{exact} {mc} {se}");
            }
        }
        let [(_, again), _] = build(&cfg).unwrap();
        assert_eq!(a.to_csv(""), again.to_csv(""));
    }
}
