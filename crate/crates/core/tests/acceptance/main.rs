//! Acceptance criteria. Prints one line per criterion and exits non-zero if
//! any criterion fails. Positional arguments select criteria by number.

mod algebra;
mod cli;
mod dynamics;
mod effective;
mod quadrature;
mod readout;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

/// Outcome of one criterion.
pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }

    /// Combines sub-checks; the criterion passes only if all of them do.
    pub fn all(parts: Vec<Verdict>) -> Self {
        let passed = parts.iter().all(|v| v.passed);
        let detail = parts
            .iter()
            .map(|v| if v.passed { v.detail.clone() } else { format!("[FAIL] {}", v.detail) })
            .collect::<Vec<_>>()
            .join("; ");
        Self { passed, detail }
    }
}

pub type Outcome = Result<Verdict, String>;

type Criterion = (u32, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 10] = [
    (1, "300 ns readout infidelity", readout::infidelity_at_300_ns),
    (2, "fig4 regeneration", cli::fig4_regeneration),
    (3, "fig3 regeneration", cli::fig3_regeneration),
    (4, "block-diagonalization oracle", effective::block_oracle),
    (5, "g_z adjudication", cli::gz_adjudication),
    (6, "four-MZM coefficients", effective::four_mzm),
    (7, "two-qubit ZZ gate", dynamics::zz_gate),
    (8, "displacement dynamics", dynamics::displacement),
    (9, "Monte Carlo consistency", cli::monte_carlo),
    (10, "algebra property suite", algebra::properties),
];

fn main() -> ExitCode {
    let picked: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for (n, name, f) in CRITERIA {
        if !picked.is_empty() && !picked.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let v = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(Ok(v)) => v,
            Ok(Err(e)) => Verdict::new(false, format!("error: {e}")),
            Err(_) => Verdict::new(false, "panicked"),
        };
        let status = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status} {name} ({:.1} s): {}", start.elapsed().as_secs_f64(), v.detail);
        if !v.passed {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
