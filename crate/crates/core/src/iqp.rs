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

//! X-diagonal (IQP) circuits on graphs and 2D lattices, random product input
//! states, and the closed-form conjugation of `Z_l` by an IQP unitary.
//!
//! Convention: `U_IQP = exp(iπ/8 (Σ w_jk X_j X_k + Σ v_k X_k))`. The lattice
//! unitary `U_2D = exp(iπ/4 (Σ X_j X_k + Σ X_k))` is the instance `w = v = 2`.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_4, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitIR, Gate, GateKind};
use crate::error::{Error, Result};
use crate::linalg::{StateVector, C64, ONE};
use crate::pauli::{PauliString, PauliSum};

/// Coefficients below this are treated as vanishing trigonometric terms.
const PRUNE_TOL: f64 = 1e-12;

/// Default per-qubit angle set `Θ = {0, π/4}`.
pub const DEFAULT_ANGLES: [f64; 2] = [0.0, FRAC_PI_4];

/// A `rows × cols` nearest-neighbour grid; qubit `r·cols + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rows: usize,
    pub cols: usize,
}

impl LatticeSpec {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        let l = Self { rows, cols };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::validation(format!(
                "lattice: rows and cols must be positive, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows * self.cols > 24 {
            return Err(Error::validation(format!(
                "lattice: {}x{} has more than 24 sites",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.rows * self.cols
    }

    /// Grid adjacency, each edge once with `j < k`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let j = r * self.cols + c;
                if c + 1 < self.cols {
                    out.push((j, j + 1));
                }
                if r + 1 < self.rows {
                    out.push((j, j + self.cols));
                }
            }
        }
        out
    }

    /// Sites with four neighbours.
    pub fn interior(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for r in 1..self.rows.saturating_sub(1) {
            for c in 1..self.cols.saturating_sub(1) {
                out.push(r * self.cols + c);
            }
        }
        out
    }

    /// The graph of `U_2D`: weight 2 on every edge and every site.
    pub fn u2d_graph(&self) -> IqpGraph {
        IqpGraph {
            n: self.num_qubits(),
            edges: self.edges().into_iter().map(|(j, k)| (j, k, 2.0)).collect(),
            onsite: vec![2.0; self.num_qubits()],
        }
    }
}

/// Weighted graph defining an IQP unitary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IqpGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
    /// On-site weights `v_k`; empty means all zero.
    #[serde(default)]
    pub onsite: Vec<f64>,
}

impl IqpGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>, onsite: Vec<f64>) -> Result<Self> {
        let g = Self { n, edges, onsite };
        g.validate()?;
        Ok(g)
    }

    /// Random graph: each pair is an edge with probability `density`, weights
    /// and on-site terms uniform in `[-4, 4)`.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for j in 0..n {
            for k in j + 1..n {
                if rng.random_bool(density) {
                    edges.push((j, k, rng.random_range(-4.0..4.0)));
                }
            }
        }
        let onsite = (0..n).map(|_| rng.random_range(-4.0..4.0)).collect();
        Self { n, edges, onsite }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::validation("n: graph needs at least one vertex"));
        }
        if !self.onsite.is_empty() && self.onsite.len() != self.n {
            return Err(Error::validation(format!(
                "onsite: expected {} values, got {}",
                self.n,
                self.onsite.len()
            )));
        }
        if self.onsite.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("onsite: weights must be finite"));
        }
        let mut seen = BTreeSet::new();
        for (i, &(j, k, w)) in self.edges.iter().enumerate() {
            if j >= self.n || k >= self.n {
                return Err(Error::validation(format!(
                    "edges[{i}]: vertex out of range for n={}",
                    self.n
                )));
            }
            if j == k {
                return Err(Error::validation(format!("edges[{i}]: self-loop on {j}")));
            }
            if !w.is_finite() {
                return Err(Error::validation(format!(
                    "edges[{i}]: weight must be finite"
                )));
            }
            if !seen.insert((j.min(k), j.max(k))) {
                return Err(Error::validation(format!(
                    "edges[{i}]: duplicate edge ({j},{k})"
                )));
            }
        }
        Ok(())
    }

    pub fn onsite_weight(&self, k: usize) -> f64 {
        self.onsite.get(k).copied().unwrap_or(0.0)
    }

    /// `(k, w_kl)` for every edge incident to `l`.
    pub fn neighbours(&self, l: usize) -> Vec<(usize, f64)> {
        self.edges
            .iter()
            .filter_map(|&(j, k, w)| match (j == l, k == l) {
                (true, _) => Some((k, w)),
                (_, true) => Some((j, w)),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, l: usize) -> usize {
        self.neighbours(l).len()
    }

    /// The exponent `Σ w_jk X_j X_k + Σ v_k X_k` as a Pauli sum.
    pub fn generator(&self) -> Result<PauliSum> {
        let mut sum = PauliSum::new(self.n);
        for &(j, k, w) in &self.edges {
            let a = PauliString::single(self.n, j, 'X')?;
            let b = PauliString::single(self.n, k, 'X')?;
            sum.add_term(w, PauliString { x: a.x | b.x, z: 0 });
        }
        for k in 0..self.n {
            let v = self.onsite_weight(k);
            if v != 0.0 {
                sum.add_term(v, PauliString::single(self.n, k, 'X')?);
            }
        }
        Ok(sum)
    }
}

/// `exp(iπ/8 (Σ w X_jX_k + Σ v X_k))` as commuting `Rxx`/`Rx` factors.
pub fn build_iqp(graph: &IqpGraph) -> Result<CircuitIR> {
    graph.validate()?;
    let mut gates = Vec::new();
    for &(j, k, w) in &graph.edges {
        if w != 0.0 {
            gates.push(Gate::two(GateKind::Rxx(-PI * w / 4.0), j, k)?);
        }
    }
    for k in 0..graph.n {
        let v = graph.onsite_weight(k);
        if v != 0.0 {
            gates.push(Gate::one(GateKind::Rx(-PI * v / 4.0), k)?);
        }
    }
    if gates.is_empty() {
        gates.push(Gate::one(GateKind::I, 0)?);
    }
    CircuitIR::new(graph.n, gates)
}

/// `U_2D` on a lattice.
pub fn build_u2d(lattice: &LatticeSpec) -> Result<CircuitIR> {
    lattice.validate()?;
    build_iqp(&lattice.u2d_graph())
}

/// Per-qubit angles and bits of a product input `|ψ_{θ,x}⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductInput {
    pub theta: Vec<f64>,
    pub x: Vec<u8>,
}

impl ProductInput {
    pub fn new(theta: Vec<f64>, x: Vec<u8>) -> Result<Self> {
        let p = Self { theta, x };
        p.validate()?;
        Ok(p)
    }

    /// Angles drawn uniformly from `angles`, bits uniformly.
    pub fn random<R: Rng + ?Sized>(n: usize, angles: &[f64], rng: &mut R) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::validation("angles: the angle set is empty"));
        }
        let theta = (0..n)
            .map(|_| angles[rng.random_range(0..angles.len())])
            .collect();
        let x = (0..n).map(|_| rng.random_range(0..2u8)).collect();
        Self::new(theta, x)
    }

    pub fn validate(&self) -> Result<()> {
        if self.theta.is_empty() || self.theta.len() != self.x.len() {
            return Err(Error::validation(format!(
                "input: {} angles but {} bits",
                self.theta.len(),
                self.x.len()
            )));
        }
        if self.theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::validation("input.theta: angles must be finite"));
        }
        if let Some(b) = self.x.iter().find(|&&b| b > 1) {
            return Err(Error::validation(format!("input.x: {b} is not a bit")));
        }
        Ok(())
    }

    /// Check every angle against an allowed set (exact match).
    pub fn check_angles(&self, allowed: &[f64]) -> Result<()> {
        match self.theta.iter().position(|t| !allowed.contains(t)) {
            Some(j) => Err(Error::validation(format!(
                "input.theta[{j}]: {} is not in the allowed set",
                self.theta[j]
            ))),
            None => Ok(()),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }
}

/// `⊗_j (|+⟩ + (−1)^{x_j} e^{iθ_j} |−⟩)`, normalized.
pub fn build_input_state(p: &ProductInput) -> Result<StateVector> {
    p.validate()?;
    let n = p.num_qubits();
    // |+⟩ + c|−⟩ = ((1+c)|0⟩ + (1−c)|1⟩)/√2, with norm √2 when |c| = 1.
    let factors: Vec<[C64; 2]> = p
        .theta
        .iter()
        .zip(&p.x)
        .map(|(&t, &b)| {
            let sign = if b == 0 { 1.0 } else { -1.0 };
            let c = C64::from_polar(sign, t);
            [(ONE + c) * 0.5, (ONE - c) * 0.5]
        })
        .collect();
    let amps = (0..1usize << n)
        .map(|b| {
            factors
                .iter()
                .enumerate()
                .map(|(q, f)| f[(b >> (n - 1 - q)) & 1])
                .product()
        })
        .collect();
    StateVector::normalized(n, amps)
}

/// `U† Z_l U = Z_l cos(π/4 H_l) − Y_l sin(π/4 H_l)` with
/// `H_l = v_l + Σ_k w_kl X_k`, expanded into Pauli strings.
///
/// With `basis_swap` the result is conjugated by a global Hadamard, turning
/// the `Z ∏ X` picture into the `X ∏ Z` one.
pub fn conjugate_z(l: usize, graph: &IqpGraph, basis_swap: bool) -> Result<PauliSum> {
    graph.validate()?;
    if l >= graph.n {
        return Err(Error::validation(format!(
            "qubit {l} out of range for n={}",
            graph.n
        )));
    }
    let n = graph.n;
    // e^{iπ/4 H_l} = e^{iπ v_l/4} ∏_k (cos(π w_k/4) + i sin(π w_k/4) X_k),
    // expanded branch by branch into Σ_S c_S X_S.
    let mut branches: Vec<(usize, C64)> =
        vec![(0, C64::from_polar(1.0, FRAC_PI_4 * graph.onsite_weight(l)))];
    for (k, w) in graph.neighbours(l) {
        let (s, c) = (FRAC_PI_4 * w).sin_cos();
        let xk = 1usize << (n - 1 - k);
        branches = branches
            .into_iter()
            .flat_map(|(mask, amp)| [(mask, amp * c), (mask | xk, amp * C64::new(0.0, s))])
            .collect();
    }
    let zl = 1usize << (n - 1 - l);
    let mut out = PauliSum::new(n);
    for (mask, c) in branches {
        out.add_term(c.re, PauliString { x: mask, z: zl });
        out.add_term(
            -c.im,
            PauliString {
                x: mask | zl,
                z: zl,
            },
        );
    }
    let out = out.pruned(PRUNE_TOL);
    Ok(if basis_swap { hadamard_all(&out) } else { out })
}

/// `H^{⊗n} P H^{⊗n}`: swaps X and Z, negating each Y.
pub fn hadamard_all(p: &PauliSum) -> PauliSum {
    let mut out = PauliSum::new(p.num_qubits());
    for (s, c) in p.iter() {
        let sign = if s.y_count() % 2 == 0 { 1.0 } else { -1.0 };
        out.add_term(sign * c, PauliString { x: s.z, z: s.x });
    }
    out
}
