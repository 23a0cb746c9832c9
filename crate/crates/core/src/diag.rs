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

//! Quantum-diagonalizable Hamiltonians `H̃ = U† diag(f) U` and the lattice
//! family `H_2D[w] = Σ_j w_j U_2D† n̂_j U_2D`.

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::circuit::CircuitIR;
use crate::error::{Error, Result};
use crate::iqp::{build_u2d, conjugate_z, LatticeSpec};
use crate::linalg::{eigendecompose, HermitianOperator, C64};
use crate::pauli::{PauliString, PauliSum};
use crate::policy::policy;

pub use crate::linalg::{spectral_gap, GapInfo};

/// Tolerance on `Σ w_j ≤ 1`.
const RANGE_TOL: f64 = 1e-12;

/// Linear eigenvalue function `f(z) = Σ_j w_j z_j`, where `z_j` is the bit of
/// qubit `j` (qubit 0 is the most significant bit of `z`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFunction {
    weights: Vec<f64>,
    /// `k_j` with `w_j = 2^{-k_j}` when every weight is such a power.
    dyadic: Option<Vec<u32>>,
    /// Sorted `(f(z), z)` table when `f` is injective.
    inverse: Option<Vec<(f64, usize)>>,
}

impl EigenFunction {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::validation("weights: need at least one weight"));
        }
        if let Some(j) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::validation(format!(
                "weights[{j}]: {} must be finite and non-negative",
                weights[j]
            )));
        }
        let total: f64 = weights.iter().sum();
        if total > 1.0 + RANGE_TOL {
            return Err(Error::validation(format!(
                "weights: sum {total} exceeds 1; normalize so that f(z) ∈ [0,1]"
            )));
        }
        let dyadic = weights.iter().map(|&w| dyadic_exponent(w)).collect();
        let mut f = Self {
            weights,
            dyadic,
            inverse: None,
        };
        let n = f.num_qubits();
        if n <= 24 {
            let mut table: Vec<(f64, usize)> = (0..1usize << n).map(|z| (f.eval(z), z)).collect();
            table.sort_by(|a, b| a.0.total_cmp(&b.0));
            if table.windows(2).all(|w| w[0].0 < w[1].0) {
                f.inverse = Some(table);
            }
        }
        Ok(f)
    }

    pub fn num_qubits(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_dyadic(&self) -> bool {
        self.dyadic.is_some()
    }

    fn bit(&self, z: usize, j: usize) -> bool {
        (z >> (self.num_qubits() - 1 - j)) & 1 == 1
    }

    pub fn eval(&self, z: usize) -> f64 {
        (0..self.num_qubits())
            .filter(|&j| self.bit(z, j))
            .fold(0.0, |acc, j| acc + self.weights[j])
    }

    /// Exact `f(z)` for dyadic weights.
    pub fn eval_exact(&self, z: usize) -> Option<Ratio<u64>> {
        let ks = self.dyadic.as_ref()?;
        let denom = 1u64 << ks.iter().copied().max().unwrap_or(0);
        let numer = (0..self.num_qubits())
            .filter(|&j| self.bit(z, j))
            .map(|j| denom >> ks[j])
            .sum();
        Some(Ratio::new(numer, denom))
    }

    /// The `z` with `f(z) = value` exactly, when `f` is injective.
    pub fn inverse(&self, value: f64) -> Option<usize> {
        let table = self.inverse.as_ref()?;
        let i = table.partition_point(|(v, _)| *v < value);
        table.get(i).filter(|(v, _)| *v == value).map(|(_, z)| *z)
    }

    /// `f(z)` for every `z`.
    pub fn values(&self) -> Vec<f64> {
        (0..1usize << self.num_qubits())
            .map(|z| self.eval(z))
            .collect()
    }
}

/// `Some(k)` when `w = 2^{-k}` exactly with `k ≤ 62`.
fn dyadic_exponent(w: f64) -> Option<u32> {
    (0..=62u32).find(|&k| w == (-(k as f64)).exp2())
}

/// Named weight vectors for `H_2D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightPreset {
    /// `u_j = 2^{-(j+1)}`, giving `f(z) = z / 2^n`.
    U,
    /// `v_j = 1/n`, the uniform cluster Hamiltonian.
    V,
}

impl WeightPreset {
    pub fn weights(self, n: usize) -> Vec<f64> {
        match self {
            WeightPreset::U => (0..n).map(|j| (-((j + 1) as f64)).exp2()).collect(),
            WeightPreset::V => vec![1.0 / n as f64; n],
        }
    }
}

/// `H̃ = U† diag(f(z)) U`, optionally with a local Pauli expansion.
#[derive(Debug, Clone)]
pub struct DiagonalizableHamiltonian {
    diagonalizer: CircuitIR,
    eigen: EigenFunction,
    pauli_form: Option<PauliSum>,
}

impl DiagonalizableHamiltonian {
    pub fn new(diagonalizer: CircuitIR, eigen: EigenFunction) -> Result<Self> {
        if diagonalizer.num_qubits() != eigen.num_qubits() {
            return Err(Error::validation(format!(
                "weights: {} weights for a {}-qubit diagonalizer",
                eigen.num_qubits(),
                diagonalizer.num_qubits()
            )));
        }
        Ok(Self {
            diagonalizer,
            eigen,
            pauli_form: None,
        })
    }

    pub fn with_pauli_form(mut self, pauli: PauliSum) -> Result<Self> {
        if pauli.num_qubits() != self.num_qubits() {
            return Err(Error::validation("terms: qubit count mismatch"));
        }
        self.pauli_form = Some(pauli);
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.diagonalizer.num_qubits()
    }

    pub fn diagonalizer(&self) -> &CircuitIR {
        &self.diagonalizer
    }

    pub fn eigen(&self) -> &EigenFunction {
        &self.eigen
    }

    pub fn pauli_form(&self) -> Option<&PauliSum> {
        self.pauli_form.as_ref()
    }

    /// `U† diag(f) U` built from the circuit and `f` alone.
    pub fn reference_dense(&self) -> Result<DMatrix<C64>> {
        let u = self.diagonalizer.unitary()?;
        let mut du = u.clone();
        for (z, f) in self.eigen.values().into_iter().enumerate() {
            du.row_mut(z).scale_mut(f);
        }
        Ok(u.adjoint() * du)
    }

    /// The operator, from the Pauli form when present.
    pub fn operator(&self) -> Result<HermitianOperator> {
        match &self.pauli_form {
            Some(p) => p.to_operator(),
            None => HermitianOperator::from_dense(self.reference_dense()?),
        }
    }
}

/// `H_2D[w]`, with both the `(U_2D, f)` pair and the Pauli form
/// `Σ_j w_j (I − U†Z_jU)/2`.
pub fn build_h2d(lattice: &LatticeSpec, weights: &[f64]) -> Result<DiagonalizableHamiltonian> {
    lattice.validate()?;
    let n = lattice.num_qubits();
    if weights.len() != n {
        return Err(Error::validation(format!(
            "weights: expected {n} values for a {}x{} lattice, got {}",
            lattice.rows,
            lattice.cols,
            weights.len()
        )));
    }
    let eigen = EigenFunction::new(weights.to_vec())?;
    let graph = lattice.u2d_graph();
    let mut pauli = PauliSum::new(n);
    for (j, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        pauli.add_term(w / 2.0, PauliString::IDENTITY);
        pauli.add(&conjugate_z(j, &graph, false)?.scaled(-w / 2.0));
    }
    DiagonalizableHamiltonian::new(build_u2d(lattice)?, eigen)?.with_pauli_form(pauli.pruned(0.0))
}

/// `H_2D` with a named weight preset.
pub fn build_h2d_preset(
    lattice: &LatticeSpec,
    preset: WeightPreset,
) -> Result<DiagonalizableHamiltonian> {
    build_h2d(lattice, &preset.weights(lattice.num_qubits()))
}

/// `(H/κ + 1)/2`, whose spectrum lies in `[0,1]` when `κ ≥ ‖H‖`.
///
/// `κ` is checked against `‖H‖`: exactly at dense sizes, otherwise against the
/// max-row-sum bound.
pub fn rescale_to_unit(h: &HermitianOperator, kappa: f64) -> Result<HermitianOperator> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::validation(format!(
            "kappa: {kappa} must be positive"
        )));
    }
    let norm = if h.dim() <= policy().dense_limit {
        let spec = eigendecompose(h)?;
        spec.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    } else {
        h.norm_bound()
    };
    if kappa < norm - policy().degeneracy_tol {
        return Err(Error::validation(format!(
            "kappa: {kappa} is below the operator norm bound {norm}"
        )));
    }
    Ok(h.affine(0.5 / kappa, 0.5))
}

/// Projector onto eigenvectors with eigenvalue in `[e_a, e_b]` (closed, with
/// the degeneracy tolerance on both ends).
pub fn spectral_projection(h: &HermitianOperator, e_a: f64, e_b: f64) -> Result<HermitianOperator> {
    if e_a > e_b {
        return Err(Error::validation(format!(
            "interval: [{e_a}, {e_b}] is empty"
        )));
    }
    let tol = policy().degeneracy_tol;
    let spec = eigendecompose(h)?;
    let p = spec.projector(|l| l >= e_a - tol && l <= e_b + tol);
    HermitianOperator::from_dense((&p + p.adjoint()) * C64::new(0.5, 0.0))
}
