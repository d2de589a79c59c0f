use std::collections::VecDeque;

use nalgebra::DMatrix;
use serde::Serialize;

use super::SwError;
use crate::algebra::{OperatorMatrix, C64};

pub const MAX_ORDER: usize = 6;

/// Perturbation problem `H = H0 + V` with `H0` diagonal and a low-energy
/// subspace spanned by basis states.
#[derive(Debug, Clone)]
pub struct SwProblem {
    pub h0: OperatorMatrix,
    pub v: OperatorMatrix,
    pub low_states: Vec<usize>,
    pub order: usize,
}

impl SwProblem {
    pub fn new(h0: OperatorMatrix, v: OperatorMatrix, low_states: Vec<usize>, order: usize) -> Self {
        Self { h0, v, low_states, order }
    }

    /// Builds the problem from a diagonal projector.
    pub fn from_projector(
        h0: OperatorMatrix,
        v: OperatorMatrix,
        p_low: &OperatorMatrix,
        order: usize,
    ) -> Result<Self, SwError> {
        if !p_low.is_diagonal() {
            return Err(SwError::InvalidProjector);
        }
        let mut low = Vec::new();
        for (i, z) in p_low.diagonal_entries().into_iter().enumerate() {
            if z == C64::new(1.0, 0.0) {
                low.push(i);
            } else if z != C64::new(0.0, 0.0) {
                return Err(SwError::InvalidProjector);
            }
        }
        Ok(Self::new(h0, v, low, order))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SwResult {
    pub low_states: Vec<usize>,
    /// `per_order[k]` is the order-`k` contribution on the low subspace;
    /// `per_order[0]` is `P H0 P`.
    #[serde(skip)]
    pub per_order: Vec<DMatrix<C64>>,
    /// Hermitized sum of all orders.
    #[serde(skip)]
    pub h_eff: DMatrix<C64>,
    /// Largest entry of the anti-Hermitian part removed by Hermitization.
    pub antihermitian_residual: f64,
    /// Dimension of the subspace coupled to the low states.
    pub active_dim: usize,
}

/// States connected to `seeds` through nonzero entries of `h0 + v`.
fn reachable(h0: &OperatorMatrix, v: &OperatorMatrix, seeds: &[usize]) -> Vec<usize> {
    let dim = h0.dim();
    let mut seen = vec![false; dim];
    let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
    for &s in seeds {
        seen[s] = true;
    }
    let va = v.adjoint();
    while let Some(i) = queue.pop_front() {
        // column i of V is row i of V^dag
        for (j, _) in va.row(i).chain(v.row(i)).chain(h0.row(i)) {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    (0..dim).filter(|&i| seen[i]).collect()
}

type Series = Vec<Option<DMatrix<C64>>>;

fn add_into(acc: &mut Option<DMatrix<C64>>, x: DMatrix<C64>) {
    match acc {
        Some(a) => *a += x,
        None => *acc = Some(x),
    }
}

/// Order-truncated `[A, B]` of two power series.
fn comm_series(a: &Series, b: &Series, max: usize) -> Series {
    let mut out: Series = vec![None; max + 1];
    for (i, ai) in a.iter().enumerate() {
        let Some(ai) = ai else { continue };
        for (j, bj) in b.iter().enumerate().take(max + 1 - i) {
            let Some(bj) = bj else { continue };
            add_into(&mut out[i + j], ai * bj - bj * ai);
        }
    }
    out
}

/// Schrieffer-Wolff effective Hamiltonian on the low subspace through
/// `problem.order`.
///
/// The generator `S = S_1 + S_2 + ...` is block off-diagonal. At order `n`
/// the order-`n` part `R_n` of `e^S H e^-S` (computed without `S_n`) fixes
/// `S_n` by `[S_n, H0] = -offdiag(R_n)`, i.e. entrywise division by energy
/// differences; the low-low block of `R_n` is the order-`n` effective term.
pub fn sw_effective(problem: &SwProblem) -> Result<SwResult, SwError> {
    let SwProblem { h0, v, low_states, order } = problem;
    let order = *order;
    if order == 0 || order > MAX_ORDER {
        return Err(SwError::UnsupportedOrder(order));
    }
    if h0.try_add(v).is_err() {
        return Err(SwError::BasisMismatch);
    }
    if !h0.is_diagonal() {
        return Err(SwError::NonDiagonalH0);
    }
    if low_states.is_empty() {
        return Err(SwError::EmptyLowSpace);
    }
    let active = reachable(h0, v, low_states);
    let d = active.len();
    let is_low: Vec<bool> = active.iter().map(|i| low_states.contains(i)).collect();
    let e: Vec<f64> = active.iter().map(|&i| h0.get(i, i).re).collect();
    let lows: Vec<usize> = (0..d).filter(|&k| is_low[k]).collect();

    for &i in &lows {
        for j in 0..d {
            if !is_low[j] && e[j] == e[i] {
                return Err(SwError::DegenerateGap);
            }
        }
    }

    let h0d = DMatrix::from_fn(d, d, |i, j| if i == j { C64::new(e[i], 0.0) } else { C64::new(0.0, 0.0) });
    let vd = v.submatrix(&active);
    let mut h_series: Series = vec![None; order + 1];
    h_series[0] = Some(h0d.clone());
    h_series[1] = Some(vd);
    let mut s_series: Series = vec![None; order + 1];

    let restrict = |m: &DMatrix<C64>| DMatrix::from_fn(lows.len(), lows.len(), |a, b| m[(lows[a], lows[b])]);
    let mut per_order = vec![restrict(&h0d)];

    for n in 1..=order {
        let mut r_n = h_series[n].clone().unwrap_or_else(|| DMatrix::zeros(d, d));
        let mut term = h_series.clone();
        for m in 1..=n {
            term = comm_series(&s_series, &term, n);
            let inv = 1.0 / m as f64;
            for t in term.iter_mut().flatten() {
                *t *= C64::new(inv, 0.0);
            }
            if let Some(t) = &term[n] {
                r_n += t;
            }
        }
        let mut s_n = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if is_low[i] != is_low[j] {
                    s_n[(i, j)] = -r_n[(i, j)] / (e[j] - e[i]);
                }
            }
        }
        s_series[n] = Some(s_n);
        per_order.push(restrict(&r_n));
    }

    let total = per_order.iter().fold(DMatrix::zeros(lows.len(), lows.len()), |acc, m| acc + m);
    let anti = (&total - total.adjoint()) * C64::new(0.5, 0.0);
    let residual = anti.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let h_eff = (&total + total.adjoint()) * C64::new(0.5, 0.0);
    Ok(SwResult {
        low_states: lows.iter().map(|&k| active[k]).collect(),
        per_order,
        h_eff,
        antihermitian_residual: residual,
        active_dim: d,
    })
}
