//! Sparse complex operators tagged with their basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{AlgebraError, FockBasis};

pub type C64 = Complex64;

/// Compressed-row sparse matrix over a [`FockBasis`].
///
/// Column indices inside a row are strictly increasing and explicit zeros are
/// dropped, so two operators with equal entries have identical storage.
#[derive(Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: Arc<FockBasis>,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorMatrix")
            .field("dim", &self.dim())
            .field("nnz", &self.nnz())
            .finish()
    }
}

fn same_basis(a: &Arc<FockBasis>, b: &Arc<FockBasis>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl OperatorMatrix {
    /// Builds an operator from `(row, col, value)` triplets. Duplicates are
    /// summed in input order.
    pub fn from_triplets(
        basis: Arc<FockBasis>,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis.dim();
        let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            if r >= dim || c >= dim {
                return Err(AlgebraError::IndexOutOfRange { row: r, col: c, dim });
            }
            rows[r].push((c, v));
        }
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for mut row in rows {
            // stable sort keeps the summation order of duplicates fixed
            row.sort_by_key(|&(c, _)| c);
            let mut k = 0;
            while k < row.len() {
                let c = row[k].0;
                let mut v = C64::new(0.0, 0.0);
                while k < row.len() && row[k].0 == c {
                    v += row[k].1;
                    k += 1;
                }
                if v != C64::new(0.0, 0.0) {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(Self { basis, indptr, indices, values })
    }

    pub fn zeros(basis: Arc<FockBasis>) -> Self {
        let dim = basis.dim();
        Self { basis, indptr: vec![0; dim + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(basis: Arc<FockBasis>) -> Self {
        Self::diagonal(basis, |_| C64::new(1.0, 0.0))
    }

    /// Diagonal operator with entry `f(i)` at `(i, i)`.
    pub fn diagonal(basis: Arc<FockBasis>, f: impl Fn(usize) -> C64) -> Self {
        let dim = basis.dim();
        Self::from_triplets(basis, (0..dim).map(|i| (i, i, f(i))))
            .expect("diagonal indices are in range")
    }

    /// Sparse copy of a dense matrix; entries with `|z| <= drop_tol` are dropped.
    pub fn from_dense(basis: Arc<FockBasis>, m: &DMatrix<C64>, drop_tol: f64) -> Result<Self, AlgebraError> {
        let dim = basis.dim();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(AlgebraError::ShapeMismatch { expected: dim, got: m.nrows().max(m.ncols()) });
        }
        let trip = (0..dim)
            .flat_map(|r| (0..dim).map(move |c| (r, c)))
            .filter_map(|(r, c)| {
                let v = m[(r, c)];
                (v.norm() > drop_tol).then_some((r, c, v))
            });
        Self::from_triplets(basis, trip)
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Stored entries of row `r` as `(col, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let span = self.indptr[r]..self.indptr[r + 1];
        self.indices[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    /// All stored entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim()).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let span = self.indptr[r]..self.indptr[r + 1];
        match self.indices[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_basis(&self.basis, &other.basis) {
            Ok(())
        } else {
            Err(AlgebraError::BasisMismatch)
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        if s == C64::new(0.0, 0.0) {
            return Self::zeros(self.basis.clone());
        }
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `a * self + b * other`.
    pub fn try_lin_comb(&self, a: C64, other: &Self, b: C64) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let dim = self.dim();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::with_capacity(self.nnz() + other.nnz());
        let mut values = Vec::with_capacity(self.nnz() + other.nnz());
        indptr.push(0);
        for r in 0..dim {
            let (mut i, ie) = (self.indptr[r], self.indptr[r + 1]);
            let (mut j, je) = (other.indptr[r], other.indptr[r + 1]);
            while i < ie || j < je {
                let ci = if i < ie { self.indices[i] } else { usize::MAX };
                let cj = if j < je { other.indices[j] } else { usize::MAX };
                let (c, v) = if ci == cj {
                    let v = a * self.values[i] + b * other.values[j];
                    i += 1;
                    j += 1;
                    (ci, v)
                } else if ci < cj {
                    i += 1;
                    (ci, a * self.values[i - 1])
                } else {
                    j += 1;
                    (cj, b * other.values[j - 1])
                };
                if v != C64::new(0.0, 0.0) {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(Self { basis: self.basis.clone(), indptr, indices, values })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_lin_comb(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_lin_comb(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    /// Sparse product `self * other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let dim = self.dim();
        let mut acc = vec![C64::new(0.0, 0.0); dim];
        let mut seen = vec![false; dim];
        let mut cols: Vec<usize> = Vec::new();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..dim {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if !seen[c] {
                        seen[c] = true;
                        cols.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            cols.sort_unstable();
            for &c in &cols {
                let v = acc[c];
                if v != C64::new(0.0, 0.0) {
                    indices.push(c);
                    values.push(v);
                }
                acc[c] = C64::new(0.0, 0.0);
                seen[c] = false;
            }
            cols.clear();
            indptr.push(indices.len());
        }
        Ok(Self { basis: self.basis.clone(), indptr, indices, values })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let dim = self.dim();
        let mut counts = vec![0usize; dim + 1];
        for &c in &self.indices {
            counts[c + 1] += 1;
        }
        for k in 0..dim {
            counts[k + 1] += counts[k];
        }
        let indptr = counts.clone();
        let mut next = counts;
        let mut indices = vec![0; self.nnz()];
        let mut values = vec![C64::new(0.0, 0.0); self.nnz()];
        // rows are visited in order, so each output row gets increasing columns
        for r in 0..dim {
            for (c, v) in self.row(r) {
                let slot = next[c];
                indices[slot] = r;
                values[slot] = v.conj();
                next[c] += 1;
            }
        }
        Self { basis: self.basis.clone(), indptr, indices, values }
    }

    pub fn try_commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn try_anticommutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)?.try_add(&other.try_mul(self)?)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.try_commutator(other).expect("operators on different bases")
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.try_anticommutator(other).expect("operators on different bases")
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus (zero for the zero operator).
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.try_sub(&self.adjoint()).map(|d| d.max_abs() <= tol).unwrap_or(false)
    }

    /// True when the operator has no entries off its diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(r, c, _)| r == c)
    }

    pub fn diagonal_entries(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn mul_vec(&self, x: &DVector<C64>) -> DVector<C64> {
        assert_eq!(x.len(), self.dim(), "vector length does not match basis");
        DVector::from_iterator(self.dim(), (0..self.dim()).map(|r| self.row(r).map(|(c, v)| v * x[c]).sum()))
    }

    /// Dense product `self * m`, written into `out`.
    pub fn mul_dense_into(&self, m: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        let dim = self.dim();
        assert_eq!(m.nrows(), dim, "dense operand has wrong row count");
        assert_eq!(out.shape(), (dim, m.ncols()), "output has wrong shape");
        out.fill(C64::new(0.0, 0.0));
        // column-major storage: walk columns outermost
        for j in 0..m.ncols() {
            let src = m.column(j);
            let mut dst = out.column_mut(j);
            for r in 0..dim {
                let mut s = C64::new(0.0, 0.0);
                for (c, v) in self.row(r) {
                    s += v * src[c];
                }
                dst[r] = s;
            }
        }
    }

    /// Accumulates `c * self * m` into `out`.
    pub fn mul_dense_add(&self, c: C64, m: &DMatrix<C64>, out: &mut DMatrix<C64>) {
        let dim = self.dim();
        assert_eq!(m.nrows(), dim, "dense operand has wrong row count");
        assert_eq!(out.shape(), (dim, m.ncols()), "output has wrong shape");
        for j in 0..m.ncols() {
            let src = m.column(j);
            let mut dst = out.column_mut(j);
            for r in 0..dim {
                let mut s = C64::new(0.0, 0.0);
                for (col, v) in self.row(r) {
                    s += v * src[col];
                }
                dst[r] += c * s;
            }
        }
    }

    pub fn mul_dense(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        let mut out = DMatrix::zeros(self.dim(), m.ncols());
        self.mul_dense_into(m, &mut out);
        out
    }

    /// `<x|self|x>` for a (not necessarily normalized) state vector.
    pub fn expectation_vec(&self, x: &DVector<C64>) -> C64 {
        x.dotc(&self.mul_vec(x))
    }

    /// `Tr(self * rho)`.
    pub fn expectation_rho(&self, rho: &DMatrix<C64>) -> C64 {
        assert_eq!(rho.shape(), (self.dim(), self.dim()), "density matrix has wrong shape");
        self.triplets().map(|(r, c, v)| v * rho[(c, r)]).sum()
    }

    /// Dense restriction to the listed basis states, in the given order.
    pub fn submatrix(&self, states: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(states.len(), states.len(), |i, j| self.get(states[i], states[j]))
    }

    /// Gershgorin bound on the spectral radius (max absolute row sum).
    pub fn row_sum_bound(&self) -> f64 {
        (0..self.dim()).map(|r| self.row(r).map(|(_, v)| v.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Gershgorin estimate of the spread of the spectrum of a Hermitian
    /// operator: `max(d_i + R_i) - min(d_i - R_i)`.
    pub fn spectral_spread_bound(&self) -> f64 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for r in 0..self.dim() {
            let mut d = 0.0;
            let mut radius = 0.0;
            for (c, v) in self.row(r) {
                if c == r {
                    d = v.re;
                } else {
                    radius += v.norm();
                }
            }
            lo = lo.min(d - radius);
            hi = hi.max(d + radius);
        }
        if self.dim() == 0 { 0.0 } else { hi - lo }
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: Self) -> OperatorMatrix {
        self.try_add(rhs).expect("operators on different bases")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: Self) -> OperatorMatrix {
        self.try_sub(rhs).expect("operators on different bases")
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: Self) -> OperatorMatrix {
        self.try_mul(rhs).expect("operators on different bases")
    }
}

impl Mul<C64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: C64) -> OperatorMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: f64) -> OperatorMatrix {
        self.scale_re(rhs)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.scale_re(-1.0)
    }
}
