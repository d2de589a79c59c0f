use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use super::ReadoutError;
use crate::algebra::{OperatorMatrix, C64};
use crate::models::{Frame, ModelBundle};

/// Integration settings for [`lindblad_evolve`].
#[derive(Debug, Clone)]
pub struct LindbladOptions {
    /// Defaults to the frame rotating with the resonator.
    pub frame: Option<Frame>,
    /// Fixed step; by default the largest step within the stability limit
    /// that divides each grid interval evenly.
    pub dt: Option<f64>,
    pub trace_tol: f64,
    pub edge_tol: f64,
    /// Extra observables (by name) to record.
    pub observables: Vec<String>,
}

impl Default for LindbladOptions {
    fn default() -> Self {
        Self { frame: None, dt: None, trace_tol: 1e-6, edge_tol: 1e-8, observables: Vec::new() }
    }
}

/// Observables along a trajectory. `a` is recorded in the integration frame;
/// see [`TrajectoryRecord::a_lab`].
#[derive(Debug, Clone, Serialize)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub a: Vec<C64>,
    pub photons: Vec<f64>,
    /// Expectation of the model's conserved observable, if it has one.
    pub qnd: Vec<f64>,
    pub purity: Vec<f64>,
    pub edge_occupancy: Vec<f64>,
    pub trace_error: Vec<f64>,
    pub extra: BTreeMap<String, Vec<C64>>,
    /// Rotation frequency of the integration frame.
    pub frame_omega: f64,
    pub dt_max: f64,
    pub steps: usize,
    #[serde(skip)]
    pub final_state: DMatrix<C64>,
}

impl TrajectoryRecord {
    /// Lab-frame `<a>` at grid point `k`.
    pub fn a_lab(&self, k: usize) -> C64 {
        self.a[k] * C64::from_polar(1.0, -self.frame_omega * self.times[k])
    }
}

/// Compressed-row matrix on the dynamically reachable subspace.
struct Csr {
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl Csr {
    /// Restriction of `op` to the states with `map[i] = Some(_)`.
    fn restrict(op: &OperatorMatrix, map: &[Option<usize>], states: &[usize]) -> Self {
        let mut indptr = vec![0];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for &r in states {
            for (c, v) in op.row(r) {
                if let Some(c) = map[c] {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self { indptr, indices, values }
    }

    /// `out += c * self * m`.
    fn mul_add(&self, c: C64, m: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        let d = m.nrows();
        let src = m.as_slice();
        let dst = out.as_mut_slice();
        for j in 0..m.ncols() {
            let col = &src[j * d..(j + 1) * d];
            for r in 0..self.indptr.len() - 1 {
                let mut s = C64::new(0.0, 0.0);
                for k in self.indptr[r]..self.indptr[r + 1] {
                    s += self.values[k] * col[self.indices[k]];
                }
                dst[j * d + r] += c * s;
            }
        }
    }

    fn mul_into(&self, m: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        out.fill(C64::new(0.0, 0.0));
        self.mul_add(C64::new(1.0, 0.0), m, out);
    }

    /// `Tr(self rho)`.
    fn expectation(&self, rho: &DMatrix<C64>) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for r in 0..self.indptr.len() - 1 {
            for k in self.indptr[r]..self.indptr[r + 1] {
                s += self.values[k] * rho[(self.indices[k], r)];
            }
        }
        s
    }
}

/// States connected to the support of `rho0` by any of `ops`.
fn reachable(rho0: &DMatrix<C64>, ops: &[&OperatorMatrix]) -> Vec<usize> {
    let d = rho0.nrows();
    let mut adj = vec![Vec::new(); d];
    for op in ops {
        for (r, c, _) in op.triplets() {
            adj[r].push(c);
            adj[c].push(r);
        }
    }
    let mut seen = vec![false; d];
    let mut stack: Vec<usize> =
        (0..d).filter(|&i| (0..d).any(|j| rho0[(i, j)] != C64::new(0.0, 0.0))).collect();
    for &i in &stack {
        seen[i] = true;
    }
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    (0..d).filter(|&i| seen[i]).collect()
}

struct Drv {
    op: Csr,
    adjoint: Option<Csr>,
    envelope: crate::models::Envelope,
}

struct Rhs {
    k_static: Csr,
    drives: Vec<Drv>,
    a: Option<Csr>,
    kappa: f64,
    x: DMatrix<C64>,
    y: DMatrix<C64>,
}

impl Rhs {
    fn eval(&mut self, t: f64, rho: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        // K = H - (i kappa/2) a^dag a, so -i[H, rho] - (kappa/2){n, rho} = Z + Z^dag with Z = -i K rho
        self.k_static.mul_into(rho, &mut self.x);
        for d in &self.drives {
            let c = d.envelope.eval(t);
            d.op.mul_add(c, rho, &mut self.x);
            if let Some(adj) = &d.adjoint {
                adj.mul_add(c.conj(), rho, &mut self.x);
            }
        }
        let mi = C64::new(0.0, -1.0);
        let d = rho.nrows();
        for j in 0..d {
            for i in 0..d {
                out[(i, j)] = mi * self.x[(i, j)] + (mi * self.x[(j, i)]).conj();
            }
        }
        if let (Some(a), true) = (&self.a, self.kappa > 0.0) {
            // a rho a^dag = a (a rho)^dag for Hermitian rho
            a.mul_into(rho, &mut self.x);
            self.x.adjoint_to(&mut self.y);
            a.mul_add(C64::new(self.kappa, 0.0), &self.y, out);
        }
    }
}

/// `y += a x`.
fn axpy(y: &mut DMatrix<C64>, a: C64, x: &DMatrix<C64>) {
    for (yi, xi) in y.as_mut_slice().iter_mut().zip(x.as_slice()) {
        *yi += a * xi;
    }
}

fn purity(rho: &DMatrix<C64>) -> f64 {
    rho.iter().map(|z| z.norm_sqr()).sum()
}

fn check_state(rho: &DMatrix<C64>, dim: usize) -> Result<(), ReadoutError> {
    if rho.shape() != (dim, dim) {
        return Err(ReadoutError::InvalidState(format!("expected {dim}x{dim}, got {:?}", rho.shape())));
    }
    let herm = (rho - rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if herm > 1e-10 {
        return Err(ReadoutError::InvalidState(format!("not Hermitian (deviation {herm:e})")));
    }
    let tr = rho.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(ReadoutError::InvalidState(format!("trace {tr} != 1")));
    }
    Ok(())
}

/// Integrates `drho/dt = -i[H(t), rho] + kappa (a rho a^dag - {a^dag a, rho}/2)`
/// with classical RK4 at a fixed step and records observables at `times`.
///
/// The step never exceeds `(2 pi / w_max)/20`, where `w_max` bounds the
/// Hamiltonian frequencies (static spread, drive amplitudes and drive
/// frequencies) plus `kappa n_max / 2`. The run aborts when the trace drifts
/// by more than `trace_tol` or the truncation-edge population exceeds
/// `edge_tol`.
pub fn lindblad_evolve(
    model: &ModelBundle,
    kappa: f64,
    rho0: &DMatrix<C64>,
    times: &[f64],
    opts: &LindbladOptions,
) -> Result<TrajectoryRecord, ReadoutError> {
    if kappa < 0.0 {
        return Err(ReadoutError::InvalidParams("kappa must be >= 0".into()));
    }
    if times.is_empty() || times.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(ReadoutError::InvalidParams("time grid must be non-empty and non-decreasing".into()));
    }
    let dim = model.basis.dim();
    check_state(rho0, dim)?;
    let frame = opts.frame.unwrap_or(match &model.resonator {
        Some(r) => Frame::Rotating(r.omega_r),
        None => Frame::Lab,
    });
    let frame_omega = match frame {
        Frame::Lab => 0.0,
        Frame::Rotating(w) => w,
    };
    let gen = model.generator(frame);
    let a = model.resonator.as_ref().map(|r| r.a.clone());
    if kappa > 0.0 && a.is_none() {
        return Err(ReadoutError::InvalidParams("decay requires a resonator".into()));
    }
    let n_op = a.as_ref().map(|a| &a.adjoint() * a);
    let n_top = n_op.as_ref().map_or(0.0, |n| n.diagonal_entries().iter().fold(0.0f64, |m, z| m.max(z.re)));
    let w_max = gen.omega_max() + 0.5 * kappa * n_top;
    let dt_limit = if w_max > 0.0 { 2.0 * PI / w_max / 20.0 } else { f64::INFINITY };
    if let Some(dt) = opts.dt {
        if !(dt > 0.0) || dt > dt_limit {
            return Err(ReadoutError::StepTooLarge { dt, limit: dt_limit });
        }
    }
    let dt_target = opts.dt.unwrap_or(dt_limit);

    let k_static = match &n_op {
        Some(n) if kappa > 0.0 => &gen.h_static + &n.scale(C64::new(0.0, -0.5 * kappa)),
        _ => gen.h_static.clone(),
    };

    let mut extra_ops = Vec::new();
    for name in &opts.observables {
        let op = model.observable(name).ok_or_else(|| ReadoutError::UnknownObservable(name.clone()))?;
        extra_ops.push((name.clone(), op));
    }
    let qnd = model.qnd_observable.as_ref().and_then(|n| model.observable(n));

    // evolve only on the subspace the dynamics can reach from rho0
    let mut coupling_ops: Vec<&OperatorMatrix> = vec![&k_static];
    coupling_ops.extend(gen.drives.iter().map(|d| &d.op));
    if kappa > 0.0 {
        coupling_ops.extend(a.as_ref());
    }
    let states = reachable(rho0, &coupling_ops);
    let mut map = vec![None; dim];
    for (k, &i) in states.iter().enumerate() {
        map[i] = Some(k);
    }
    let sub = |op: &OperatorMatrix| Csr::restrict(op, &map, &states);
    let rd = states.len();
    let mut rhs = Rhs {
        k_static: sub(&k_static),
        drives: gen
            .drives
            .iter()
            .map(|d| Drv {
                op: sub(&d.op),
                adjoint: d.add_adjoint.then(|| sub(&d.op.adjoint())),
                envelope: d.envelope.clone(),
            })
            .collect(),
        a: a.as_ref().filter(|_| kappa > 0.0).map(sub),
        kappa,
        x: DMatrix::zeros(rd, rd),
        y: DMatrix::zeros(rd, rd),
    };
    let a_sub = a.as_ref().map(sub);
    let n_sub = n_op.as_ref().map(sub);
    let qnd_sub = qnd.map(sub);
    let extra_sub: Vec<(String, Csr)> = extra_ops.iter().map(|(n, op)| (n.clone(), sub(op))).collect();
    let edges: Vec<usize> = model.edge_states.iter().filter_map(|&i| map[i]).collect();

    let mut rec = TrajectoryRecord {
        times: times.to_vec(),
        a: Vec::new(),
        photons: Vec::new(),
        qnd: Vec::new(),
        purity: Vec::new(),
        edge_occupancy: Vec::new(),
        trace_error: Vec::new(),
        extra: extra_ops.iter().map(|(n, _)| (n.clone(), Vec::new())).collect(),
        frame_omega,
        dt_max: 0.0,
        steps: 0,
        final_state: DMatrix::zeros(0, 0),
    };
    let guard = |rho: &DMatrix<C64>, t: f64| -> Result<(f64, f64), ReadoutError> {
        let tr_err = (rho.trace() - C64::new(1.0, 0.0)).norm();
        if tr_err > opts.trace_tol {
            return Err(ReadoutError::TraceDrift { t, error: tr_err });
        }
        let occ = edges.iter().map(|&i| rho[(i, i)].re).sum::<f64>();
        if occ > opts.edge_tol {
            return Err(ReadoutError::EdgeOccupancy { t, occupancy: occ });
        }
        Ok((tr_err, occ))
    };

    let mut rho = DMatrix::from_fn(rd, rd, |i, j| rho0[(states[i], states[j])]);
    let record = |rho: &DMatrix<C64>, rec: &mut TrajectoryRecord, tr_err: f64, occ: f64| {
        rec.a.push(a_sub.as_ref().map_or(C64::new(0.0, 0.0), |a| a.expectation(rho)));
        rec.photons.push(n_sub.as_ref().map_or(0.0, |n| n.expectation(rho).re));
        if let Some(q) = &qnd_sub {
            rec.qnd.push(q.expectation(rho).re);
        }
        rec.purity.push(purity(rho));
        rec.edge_occupancy.push(occ);
        rec.trace_error.push(tr_err);
        for (name, op) in &extra_sub {
            rec.extra.get_mut(name).expect("preallocated").push(op.expectation(rho));
        }
    };
    let (e0, o0) = guard(&rho, times[0])?;
    record(&rho, &mut rec, e0, o0);

    let mut k1 = DMatrix::zeros(rd, rd);
    let mut k2 = DMatrix::zeros(rd, rd);
    let mut k3 = DMatrix::zeros(rd, rd);
    let mut k4 = DMatrix::zeros(rd, rd);
    let mut y = DMatrix::zeros(rd, rd);
    let half = C64::new(0.5, 0.0);
    for w in times.windows(2) {
        let span = w[1] - w[0];
        if span > 0.0 {
            let n = (span / dt_target).ceil().max(1.0) as usize;
            let dt = span / n as f64;
            rec.dt_max = rec.dt_max.max(dt);
            let h = C64::new(dt, 0.0);
            for s in 0..n {
                let t = w[0] + s as f64 * dt;
                rhs.eval(t, &rho, &mut k1);
                y.copy_from(&rho);
                axpy(&mut y, h * half, &k1);
                rhs.eval(t + 0.5 * dt, &y, &mut k2);
                y.copy_from(&rho);
                axpy(&mut y, h * half, &k2);
                rhs.eval(t + 0.5 * dt, &y, &mut k3);
                y.copy_from(&rho);
                axpy(&mut y, h, &k3);
                rhs.eval(t + dt, &y, &mut k4);
                k2 += &k3;
                k2 *= C64::new(2.0, 0.0);
                k2 += &k1;
                k2 += &k4;
                axpy(&mut rho, h / 6.0, &k2);
                rho.adjoint_to(&mut y);
                rho += &y;
                rho *= half;
                guard(&rho, t + dt)?;
            }
            rec.steps += n;
        }
        let (e, o) = guard(&rho, w[1])?;
        record(&rho, &mut rec, e, o);
    }
    let mut full = DMatrix::zeros(dim, dim);
    for (i, &si) in states.iter().enumerate() {
        for (j, &sj) in states.iter().enumerate() {
            full[(si, sj)] = rho[(i, j)];
        }
    }
    let rho = full;
    rec.final_state = rho;
    Ok(rec)
}

/// Density matrix of a pure product state given by a basis label.
pub fn basis_state(model: &ModelBundle, label: &[i32]) -> Result<DMatrix<C64>, ReadoutError> {
    let i = model
        .basis
        .index(label)
        .ok_or_else(|| ReadoutError::InvalidState(format!("label {label:?} not in basis")))?;
    let d = model.basis.dim();
    let mut rho = DMatrix::zeros(d, d);
    rho[(i, i)] = C64::new(1.0, 0.0);
    Ok(rho)
}

/// `|psi><psi|` for a normalized amplitude vector.
pub fn pure_state(psi: &nalgebra::DVector<C64>) -> DMatrix<C64> {
    psi * psi.adjoint()
}

/// `n` equally spaced times from `t0` to `t1` inclusive.
pub fn linear_grid(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![t1];
    }
    (0..n).map(|k| t0 + (t1 - t0) * k as f64 / (n - 1) as f64).collect()
}
