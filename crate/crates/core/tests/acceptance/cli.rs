//! Criteria exercised through the `mzm-readout` binary.

use std::fs;
use std::path::Path;
use std::process::Command;

use majorana_readout::effective::adjudicate_gz;
use majorana_readout::models::DeviceParams;
use serde_json::Value;
use tempfile::TempDir;

use crate::quadrature::normal_tail;
use crate::{Outcome, Verdict};

const BIN: &str = env!("CARGO_BIN_EXE_mzm-readout");

/// Runs the binary and returns its exit code.
fn run(dir: &Path, args: &[&str]) -> Result<i32, String> {
    let out = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .map_err(|e| format!("cannot start {BIN}: {e}"))?;
    out.status.code().ok_or_else(|| "terminated by signal".to_string())
}

fn run_ok(dir: &Path, args: &[&str]) -> Result<(), String> {
    match run(dir, args)? {
        0 => Ok(()),
        c => Err(format!("`{}` exited with {c}", args.join(" "))),
    }
}

pub struct Csv {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Csv {
    fn read(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut lines = text.lines();
        match lines.next() {
            Some(l) if l.starts_with("# config_hash=") => {}
            _ => return Err(format!("{}: missing config hash line", path.display())),
        }
        let columns = lines.next().ok_or("missing header")?.split(',').map(String::from).collect();
        let rows = lines
            .map(|l| l.split(',').map(|x| x.parse::<f64>().map_err(|e| e.to_string())).collect())
            .collect::<Result<_, _>>()?;
        Ok(Self { columns, rows })
    }

    fn col(&self, name: &str) -> Result<Vec<f64>, String> {
        let k = self.columns.iter().position(|c| c == name).ok_or(format!("no column {name}"))?;
        Ok(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// Mean over standard deviation of the integrated signal,
/// `2 g int_0^tau (1 - e^{-kappa t/2}) dt / sqrt(kappa tau)`.
fn signal_to_noise(g: f64, kappa: f64, tau: f64) -> f64 {
    let mu = 2.0 * g * (tau - 2.0 / kappa * (1.0 - (-0.5 * kappa * tau).exp()));
    mu / (kappa * tau).sqrt()
}

pub fn fig4_regeneration() -> Outcome {
    // the oracle itself against tabulated tails
    for (a, want) in [(0.0, 0.5), (1.0, 0.15865525393145705), (5.0, 2.866515718791939e-7), (10.0, 7.619853024160526e-24)] {
        let got = normal_tail(a);
        if ((got - want) / want).abs() > 1e-12 {
            return Err(format!("quadrature oracle off at {a}: {got:e} vs {want:e}"));
        }
    }
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    run_ok(dir.path(), &["fig4"])?;
    let a = Csv::read(&dir.path().join("fig4a_infidelity.csv"))?;
    let g = a.col("g_over_kappa")?;
    let e1 = a.col("infidelity_kt1")?;
    let e2 = a.col("infidelity_kt2")?;
    let monotone = e1.windows(2).all(|w| w[1] < w[0]) && e2.windows(2).all(|w| w[1] < w[0]);
    let below = e1.iter().zip(&e2).all(|(x, y)| y < x);
    let mut worst = 0.0f64;
    for (k, &gk) in g.iter().enumerate() {
        for (kt, e) in [(1.0, e1[k]), (2.0, e2[k])] {
            let want = normal_tail(signal_to_noise(gk, 1.0, kt));
            worst = worst.max(((e - want) / want).abs());
        }
    }
    Ok(Verdict::all(vec![
        Verdict::new(g.len() == 20, format!("{} grid points", g.len())),
        Verdict::new(monotone, "curves decrease monotonically"),
        Verdict::new(below, "kappa tau = 2 below kappa tau = 1"),
        Verdict::new(worst <= 1e-6, format!("max rel error vs quadrature {worst:.1e} (tol 1e-6)")),
    ]))
}

/// Least-squares slope of `log y` against `log x`.
fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn fig3_regeneration() -> Outcome {
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("fig3.json");
    fs::write(&cfg, r#"{"t_over_delta": {"min": 0.001, "max": 1, "points": 1000}}"#).map_err(|e| e.to_string())?;
    run_ok(dir.path(), &["fig3", "--config", cfg.to_str().unwrap()])?;
    let mut parts = Vec::new();

    let mut node_rows = 0;
    let mut node_zero = true;
    for f in ["fig3c_gz_vs_phi.csv", "fig3f_wq_vs_phi.csv"] {
        let t = Csv::read(&dir.path().join(f))?;
        for r in t.rows.iter().filter(|r| r[0] == std::f64::consts::PI) {
            node_rows += 1;
            node_zero &= r[1..].iter().all(|&v| v == 0.0);
        }
    }
    parts.push(Verdict::new(node_rows == 2 && node_zero, "omega_q and g_z exactly 0 at phi_x = pi"));

    let e = Csv::read(&dir.path().join("fig3e_wq_vs_t_over_delta.csv"))?;
    let last = e.rows.last().ok_or("empty panel (e)")?;
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let err = (last[1] - golden).abs();
    parts.push(Verdict::new(last[0] == 1.0 && err <= 1e-12, format!("omega_q/delta at t = delta: |diff| {err:.1e}")));

    let b = Csv::read(&dir.path().join("fig3b_gz_vs_t_over_delta.csv"))?;
    for (name, t, exact, small) in [("g_z", &b, "gz_exact", "gz_small_t"), ("omega_q", &e, "wq_exact", "wq_small_t")] {
        let x = t.col("t_over_delta")?;
        let (ex, sm) = (t.col(exact)?, t.col(small)?);
        let (xs, errs): (Vec<f64>, Vec<f64>) = x
            .iter()
            .zip(ex.iter().zip(&sm))
            .filter(|(x, _)| **x <= 0.1)
            .map(|(x, (a, b))| (*x, ((a - b) / a).abs()))
            .unzip();
        let slope = log_slope(&xs, &errs);
        let c_max = xs.iter().zip(&errs).map(|(x, e)| e / (x * x)).fold(0.0, f64::max);
        parts.push(Verdict::new(
            (slope - 2.0).abs() < 0.05,
            format!("{name} small-t error slope {slope:.4}, max err/(t/delta)^2 = {c_max:.3}"),
        ));
    }
    Ok(Verdict::all(parts))
}

/// Devices at `t/delta` in {0.1, 0.5, 1} with `lambda_C - lambda_0 = delta/200`.
fn adjudication_devices() -> Vec<DeviceParams> {
    [0.1, 0.5, 1.0]
        .iter()
        .map(|&r| {
            let base = DeviceParams {
                e_c: 1.0,
                eps0: 1.0,
                n_g: 0.1,
                t_l: 0.0,
                t_r: 0.0,
                phi_x: 0.7,
                lambda_c: 0.0,
                lambda_0: 0.01,
                omega_r: 1.0,
                kappa: 0.0,
            };
            let d = base.delta(0).abs();
            DeviceParams { t_l: r * d, t_r: 0.6 * r * d, lambda_c: 0.01 + d / 200.0, ..base }
        })
        .collect()
}

pub fn gz_adjudication() -> Outcome {
    let adj = adjudicate_gz(&adjudication_devices(), 1e-3).map_err(|e| e.to_string())?;
    let half: Vec<String> = adj.points.iter().map(|p| format!("{:.1e}", p.rel_err_half)).collect();
    let quarter: Vec<String> = adj.points.iter().map(|p| format!("{:.2}", p.rel_err_quarter)).collect();
    let dir = TempDir::new().map_err(|e| e.to_string())?;
    run_ok(dir.path(), &["verify"])?;
    let text = fs::read_to_string(dir.path().join("verify_report.json")).map_err(|e| e.to_string())?;
    let report: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let named = report["canonical_g_z"].as_str().unwrap_or("");
    Ok(Verdict::all(vec![
        Verdict::new(adj.winner != "none", format!("oracle matches {} only", adj.winner)),
        Verdict::new(true, format!("rel err g_f/2 [{}], g_f/4 [{}]", half.join(", "), quarter.join(", "))),
        Verdict::new(named == format!("g_z = {}", adj.winner), format!("verify report names `{named}`")),
    ]))
}

pub fn monte_carlo() -> Outcome {
    let a = TempDir::new().map_err(|e| e.to_string())?;
    let b = TempDir::new().map_err(|e| e.to_string())?;
    let args = ["fig4", "--seed", "20240601", "--samples", "1000000"];
    run_ok(a.path(), &[&args[..], &["--threads", "1"]].concat())?;
    run_ok(b.path(), &[&args[..], &["--threads", "4"]].concat())?;
    let t = Csv::read(&a.path().join("fig4a_infidelity.csv"))?;
    let n = 2.0 * 1e6;
    let mut worst = 0.0f64;
    let mut cells = 0;
    for kt in ["1", "2"] {
        let exact = t.col(&format!("infidelity_kt{kt}"))?;
        let mc = t.col(&format!("mc_infidelity_kt{kt}"))?;
        for (p, m) in exact.iter().zip(&mc) {
            let se = (p * (1.0 - p) / n).sqrt();
            worst = worst.max((m - p).abs() / se);
            cells += 1;
        }
    }
    let mut identical = true;
    for f in ["fig4a_infidelity.csv", "fig4b_kappa_tau.csv"] {
        let x = fs::read(a.path().join(f)).map_err(|e| e.to_string())?;
        let y = fs::read(b.path().join(f)).map_err(|e| e.to_string())?;
        identical &= x == y;
    }
    Ok(Verdict::all(vec![
        Verdict::new(worst < 5.0, format!("{cells} cells at N = 1e6 per state, max deviation {worst:.2} standard errors")),
        Verdict::new(identical, "reruns byte-identical across thread counts"),
    ]))
}
