// Copyright 2026 The enspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use nalgebra::{DMatrix, DVector};

use super::{C64, ZERO};
use crate::error::{Error, Result};
use crate::policy::policy;

/// Square complex matrix in compressed sparse row form.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl CsrMatrix {
    /// Assemble from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(Error::validation(format!(
                "entry ({r}, {c}) outside a {dim}x{dim} matrix"
            )));
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<C64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                row_ptr[r + 1] += 1;
                col_idx.push(c);
                values.push(v);
                last = Some((r, c));
            }
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        let mut m = CsrMatrix {
            dim,
            row_ptr,
            col_idx,
            values,
        };
        m.prune();
        Ok(m)
    }

    fn prune(&mut self) {
        if self.values.iter().all(|v| *v != ZERO) {
            return;
        }
        let mut row_ptr = vec![0usize; self.dim + 1];
        let mut col_idx = Vec::with_capacity(self.values.len());
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.values[k] != ZERO {
                    col_idx.push(self.col_idx[k]);
                    values.push(self.values[k]);
                }
            }
            row_ptr[r + 1] = values.len();
        }
        self.row_ptr = row_ptr;
        self.col_idx = col_idx;
        self.values = values;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Iterate over stored `(row, col, value)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(move |k| (r, self.col_idx[k], self.values[k]))
        })
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.col_idx[range.clone()].binary_search(&col) {
            Ok(k) => self.values[range.start + k],
            Err(_) => ZERO,
        }
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = ZERO;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            *out = acc;
        }
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(self.dim, self.dim, ZERO);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    fn hermiticity_defect(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Dense(DMatrix<C64>),
    Sparse(CsrMatrix),
}

/// A Hermitian operator of arbitrary dimension.
///
/// Operators up to the policy's dense limit are stored as dense matrices,
/// larger ones in CSR form. Construction always checks Hermiticity.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    repr: Repr,
}

impl HermitianOperator {
    pub fn from_dense(m: DMatrix<C64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::validation(format!(
                "operator is not square: {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let defect = (&m - m.adjoint())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        check_hermitian(defect, m.iter().map(|v| v.norm()).fold(0.0, f64::max))?;
        Ok(Self {
            repr: Repr::Dense(m),
        })
    }

    pub fn from_sparse(m: CsrMatrix) -> Result<Self> {
        let scale = m.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        check_hermitian(m.hermiticity_defect(), scale)?;
        Ok(Self {
            repr: Repr::Sparse(m),
        })
    }

    /// Assemble from triplets, picking the storage by dimension.
    pub fn from_triplets(dim: usize, triplets: Vec<(usize, usize, C64)>) -> Result<Self> {
        let csr = CsrMatrix::from_triplets(dim, triplets)?;
        if dim <= policy().dense_limit {
            Self::from_dense(csr.to_dense())
        } else {
            Self::from_sparse(csr)
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_triplets(dim, Vec::new()).expect("zero operator is Hermitian")
    }

    /// Real diagonal operator.
    pub fn diagonal(values: &[f64]) -> Self {
        let trip = values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, i, C64::new(*v, 0.0)))
            .collect();
        Self::from_triplets(values.len(), trip).expect("real diagonal is Hermitian")
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Dense(m) => m.nrows(),
            Repr::Sparse(m) => m.dim,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.repr, Repr::Sparse(_))
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        match &self.repr {
            Repr::Dense(m) => m.clone(),
            Repr::Sparse(m) => m.to_dense(),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        match &self.repr {
            Repr::Dense(m) => m[(row, col)],
            Repr::Sparse(m) => m.get(row, col),
        }
    }

    /// `H x`.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        match &self.repr {
            Repr::Dense(m) => {
                let v = m * DVector::from_column_slice(x);
                v.as_slice().to_vec()
            }
            Repr::Sparse(m) => {
                let mut y = vec![ZERO; m.dim];
                m.matvec(x, &mut y);
                y
            }
        }
    }

    /// `⟨x|H|x⟩` (real for Hermitian `H`).
    pub fn expectation(&self, x: &[C64]) -> f64 {
        let hx = self.apply(x);
        x.iter().zip(&hx).map(|(a, b)| (a.conj() * b).re).sum()
    }

    fn triplets(&self) -> Vec<(usize, usize, C64)> {
        match &self.repr {
            Repr::Dense(m) => {
                let mut out = Vec::new();
                for c in 0..m.ncols() {
                    for r in 0..m.nrows() {
                        let v = m[(r, c)];
                        if v != ZERO {
                            out.push((r, c, v));
                        }
                    }
                }
                out
            }
            Repr::Sparse(m) => m.entries().collect(),
        }
    }

    /// `self + other`.
    pub fn add(&self, other: &HermitianOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::validation(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        if let (Repr::Dense(a), Repr::Dense(b)) = (&self.repr, &other.repr) {
            return Ok(Self {
                repr: Repr::Dense(a + b),
            });
        }
        let mut t = self.triplets();
        t.extend(other.triplets());
        Self::from_triplets(self.dim(), t)
    }

    /// `a·self + b·I`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        let dim = self.dim();
        match &self.repr {
            Repr::Dense(m) => {
                let mut out = m * C64::new(a, 0.0);
                for i in 0..dim {
                    out[(i, i)] += C64::new(b, 0.0);
                }
                Self {
                    repr: Repr::Dense(out),
                }
            }
            Repr::Sparse(_) => {
                let mut t: Vec<_> = self
                    .triplets()
                    .into_iter()
                    .map(|(r, c, v)| (r, c, v * a))
                    .collect();
                t.extend((0..dim).map(|i| (i, i, C64::new(b, 0.0))));
                Self::from_triplets(dim, t).expect("affine map preserves Hermiticity")
            }
        }
    }

    /// Principal submatrix on the listed basis indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let dim = self.dim();
        let mut pos = vec![usize::MAX; dim];
        for (k, &i) in indices.iter().enumerate() {
            if i >= dim || pos[i] != usize::MAX {
                return Err(Error::validation(format!(
                    "restriction index {i} is out of range or repeated"
                )));
            }
            pos[i] = k;
        }
        let t = self
            .triplets()
            .into_iter()
            .filter(|(r, c, _)| pos[*r] != usize::MAX && pos[*c] != usize::MAX)
            .map(|(r, c, v)| (pos[r], pos[c], v))
            .collect();
        Self::from_triplets(indices.len(), t)
    }

    /// Upper bound on the operator norm (max absolute row sum).
    pub fn norm_bound(&self) -> f64 {
        let mut rows = vec![0.0f64; self.dim()];
        for (r, _, v) in self.triplets() {
            rows[r] += v.norm();
        }
        rows.into_iter().fold(0.0, f64::max)
    }
}

fn check_hermitian(defect: f64, scale: f64) -> Result<()> {
    let tol = policy().normalization_tol * scale.max(1.0);
    if defect > tol {
        return Err(Error::validation(format!(
            "operator is not Hermitian (defect {defect:e})"
        )));
    }
    Ok(())
}

/// Largest singular value of `m`.
pub fn operator_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Frobenius norm: a cheap upper bound on the operator norm.
pub fn operator_norm_bound(m: &DMatrix<C64>) -> f64 {
    m.norm()
}

/// `‖a − b‖` in the operator norm.
pub fn operator_norm_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::validation(format!(
            "dimension mismatch: {:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok(operator_norm(&(a - b)))
}
