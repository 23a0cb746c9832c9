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

//! Feynman–Kitaev circuit-to-Hamiltonian construction with a binary clock.
//!
//! The register is `system ⊗ clock` with basis index `x·2^c + t`. Clock
//! values `t > T` never appear in any term; they are inert zero-energy
//! spectators, and certification works on the physical sector `t ≤ T`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::circuit::{marginal_probability, CircuitIR, Gate, MarginalSpec};
use crate::error::{Error, Result};
use crate::linalg::{eigendecompose, HermitianOperator, StateVector, C64, ONE, ZERO};
use crate::policy::policy;

/// Binary clock holding `t = 0..=T` in `⌈log2(T+1)⌉` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClockRegister {
    steps: usize,
    qubits: usize,
}

impl ClockRegister {
    pub fn new(steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::validation("clock: need at least one gate"));
        }
        let qubits = (usize::BITS - steps.leading_zeros()) as usize;
        Ok(Self { steps, qubits })
    }

    /// Gate count `T`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }
}

fn index(clock: &ClockRegister, x: usize, t: usize) -> usize {
    (x << clock.qubits) | t
}

fn check_size(n: usize, clock: &ClockRegister) -> Result<()> {
    let dim = (1usize << n) * clock.dim();
    let limit = policy().max_dim;
    if dim > limit {
        return Err(Error::Resource {
            what: "clock-augmented register",
            dim,
            limit,
        });
    }
    Ok(())
}

/// Nonzero entries `(row, col, value)` of a gate on `n` qubits.
fn gate_entries(n: usize, gate: &Gate) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    let mut col = vec![ZERO; 1 << n];
    for c in 0..1usize << n {
        col.iter_mut().for_each(|a| *a = ZERO);
        col[c] = ONE;
        gate.apply(n, &mut col);
        out.extend(
            col.iter()
                .enumerate()
                .filter(|(_, v)| v.norm() > 0.0)
                .map(|(r, v)| (r, c, *v)),
        );
    }
    out
}

/// `½ Σ_t [ 1⊗|t⟩⟨t| + 1⊗|t−1⟩⟨t−1| − U_t⊗|t⟩⟨t−1| − U_t†⊗|t−1⟩⟨t| ]`.
pub fn build_hprop(circuit: &CircuitIR) -> Result<HermitianOperator> {
    let n = circuit.num_qubits();
    let clock = ClockRegister::new(circuit.len())?;
    check_size(n, &clock)?;
    let half = C64::new(0.5, 0.0);
    let mut trip = Vec::new();
    for (k, gate) in circuit.gates().iter().enumerate() {
        let t = k + 1;
        for x in 0..1usize << n {
            trip.push((index(&clock, x, t), index(&clock, x, t), half));
            trip.push((index(&clock, x, t - 1), index(&clock, x, t - 1), half));
        }
        for (r, c, v) in gate_entries(n, gate) {
            trip.push((index(&clock, r, t), index(&clock, c, t - 1), -half * v));
            trip.push((
                index(&clock, c, t - 1),
                index(&clock, r, t),
                -half * v.conj(),
            ));
        }
    }
    HermitianOperator::from_triplets((1 << n) * clock.dim(), trip)
}

/// `Σ_i |1⟩⟨1|_i ⊗ |0⟩⟨0|_c`: Hamming weight of the system at `t = 0`.
pub fn build_hinit(n: usize, clock: &ClockRegister) -> Result<HermitianOperator> {
    check_size(n, clock)?;
    let mut diag = vec![0.0; (1 << n) * clock.dim()];
    for x in 0..1usize << n {
        diag[index(clock, x, 0)] = x.count_ones() as f64;
    }
    Ok(HermitianOperator::diagonal(&diag))
}

/// `Σ_i |b̄_i⟩⟨b̄_i|_{k_i} ⊗ |0⟩⟨0|_c`: violated marginal bits at `t = 0`.
pub fn build_hpen(
    n: usize,
    spec: &MarginalSpec,
    clock: &ClockRegister,
) -> Result<HermitianOperator> {
    spec.validate(n)?;
    check_size(n, clock)?;
    let mut diag = vec![0.0; (1 << n) * clock.dim()];
    for x in 0..1usize << n {
        diag[index(clock, x, 0)] = spec.violations(n, x) as f64;
    }
    Ok(HermitianOperator::diagonal(&diag))
}

/// `|η_y(t)⟩ = U_t⋯U_1|y⟩ ⊗ |t⟩_c` for `t = 0..=T`.
pub fn eta_states(circuit: &CircuitIR, y: usize) -> Result<Vec<StateVector>> {
    let n = circuit.num_qubits();
    let clock = ClockRegister::new(circuit.len())?;
    let mut sys = StateVector::basis(n, y)?;
    let mut out = Vec::with_capacity(clock.steps() + 1);
    for t in 0..=clock.steps() {
        if t > 0 {
            circuit.gates()[t - 1].apply(n, sys.amplitudes_mut());
        }
        out.push(sys.tensor(&StateVector::basis(clock.qubits(), t)?));
    }
    Ok(out)
}

/// `|ψ^{(y)}⟩ = (T+1)^{−1/2} Σ_t |η_y(t)⟩`.
pub fn history_state(circuit: &CircuitIR, y: usize) -> Result<StateVector> {
    let etas = eta_states(circuit, y)?;
    let scale = 1.0 / (etas.len() as f64).sqrt();
    let dim = etas[0].dim();
    let mut amps = vec![ZERO; dim];
    for e in &etas {
        for (a, b) in amps.iter_mut().zip(e.amplitudes()) {
            *a += b * scale;
        }
    }
    StateVector::new(etas[0].num_qubits(), amps)
}

/// Which terms accompany `H_prop`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum FkTerms {
    /// `H_prop` alone: ground space is every history state.
    Prop,
    /// `H_prop + H_init`: unique ground state `|ψ^{(0)}⟩`.
    Init,
    /// `H_prop + H_pen`: ground space `{|ψ^{(y)}⟩ : y ∈ S*}`.
    Pen { marginal: MarginalSpec },
}

/// `H_prop (+ H_init | + H_pen)` for an encoded circuit.
#[derive(Debug, Clone)]
pub struct FKOperator {
    circuit: CircuitIR,
    clock: ClockRegister,
    terms: FkTerms,
    prop: HermitianOperator,
    extra: Option<HermitianOperator>,
}

impl FKOperator {
    pub fn new(circuit: CircuitIR, terms: FkTerms) -> Result<Self> {
        let n = circuit.num_qubits();
        let clock = ClockRegister::new(circuit.len())?;
        let prop = build_hprop(&circuit)?;
        let extra = match &terms {
            FkTerms::Prop => None,
            FkTerms::Init => Some(build_hinit(n, &clock)?),
            FkTerms::Pen { marginal } => Some(build_hpen(n, marginal, &clock)?),
        };
        Ok(Self {
            circuit,
            clock,
            terms,
            prop,
            extra,
        })
    }

    pub fn with_init(circuit: CircuitIR) -> Result<Self> {
        Self::new(circuit, FkTerms::Init)
    }

    pub fn with_penalty(circuit: CircuitIR, marginal: MarginalSpec) -> Result<Self> {
        Self::new(circuit, FkTerms::Pen { marginal })
    }

    /// Encode `U†` so that the zero-energy probability on `|x⟩|T⟩_c` is
    /// `p/(T+1)` with `p = Σ_{y∈S*} |⟨y|U|x⟩|²`, the marginal of `U` on `|x⟩`.
    pub fn for_marginal(circuit: &CircuitIR, marginal: MarginalSpec) -> Result<Self> {
        Self::with_penalty(circuit.inverse(), marginal)
    }

    /// The circuit whose gates appear in `H_prop`.
    pub fn circuit(&self) -> &CircuitIR {
        &self.circuit
    }

    pub fn clock(&self) -> &ClockRegister {
        &self.clock
    }

    pub fn terms(&self) -> &FkTerms {
        &self.terms
    }

    pub fn prop(&self) -> &HermitianOperator {
        &self.prop
    }

    pub fn extra(&self) -> Option<&HermitianOperator> {
        self.extra.as_ref()
    }

    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits() + self.clock.qubits()
    }

    pub fn total(&self) -> Result<HermitianOperator> {
        match &self.extra {
            Some(e) => self.prop.add(e),
            None => Ok(self.prop.clone()),
        }
    }

    /// `κ ≥ ‖H‖`: 2 for `H_prop` plus `n` (init) or `l` (penalty).
    pub fn kappa(&self) -> f64 {
        2.0 + match &self.terms {
            FkTerms::Prop => 0.0,
            FkTerms::Init => self.circuit.num_qubits() as f64,
            FkTerms::Pen { marginal } => marginal.len() as f64,
        }
    }

    /// `H/κ`: spectrum in `[0,1]` with the ground energy kept at 0.
    pub fn scaled(&self) -> Result<HermitianOperator> {
        Ok(self.total()?.affine(1.0 / self.kappa(), 0.0))
    }

    /// Basis indices with `t ≤ T`.
    pub fn physical_indices(&self) -> Vec<usize> {
        let n = self.circuit.num_qubits();
        (0..1usize << n)
            .flat_map(|x| (0..=self.clock.steps()).map(move |t| (x, t)))
            .map(|(x, t)| index(&self.clock, x, t))
            .collect()
    }

    /// Input strings `y` whose history states span the ground space.
    pub fn ground_labels(&self) -> Vec<usize> {
        let n = self.circuit.num_qubits();
        match &self.terms {
            FkTerms::Prop => (0..1usize << n).collect(),
            FkTerms::Init => vec![0],
            FkTerms::Pen { marginal } => marginal.members(n),
        }
    }

    /// `|x⟩|T⟩_c`.
    pub fn readout_state(&self, x: usize) -> Result<StateVector> {
        Ok(
            StateVector::basis(self.circuit.num_qubits(), x)?.tensor(&StateVector::basis(
                self.clock.qubits(),
                self.clock.steps(),
            )?),
        )
    }

    /// `(1/(T+1)) Σ_{y ∈ ground labels} |⟨x|C|y⟩|²` for the encoded circuit `C`.
    pub fn expected_pgs(&self, x: usize) -> Result<f64> {
        let n = self.circuit.num_qubits();
        let scale = 1.0 / (self.clock.steps() + 1) as f64;
        let p = match &self.terms {
            FkTerms::Prop => 1.0,
            FkTerms::Init => {
                let out = crate::circuit::simulate(&self.circuit, &StateVector::basis(n, 0)?)?;
                out.amplitude(x).norm_sqr()
            }
            FkTerms::Pen { marginal } => {
                marginal_probability(&self.circuit.inverse(), x, marginal)?
            }
        };
        Ok(p * scale)
    }
}

/// Zero-energy probability check on a readout state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PgsCheck {
    pub input: usize,
    pub expected: f64,
    pub measured: f64,
}

/// Outcome of diagonalizing an FK operator on its physical sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub ground_energy: f64,
    pub gap: f64,
    pub ground_dim: usize,
    pub expected_ground_dim: usize,
    /// Largest `‖H ψ^{(y)}‖` over the expected ground labels.
    pub history_residual: f64,
    /// Most negative eigenvalue of `H_prop` (PSD check).
    pub prop_min_eigenvalue: f64,
    pub pgs_check: PgsCheck,
    pub pass: bool,
}

/// Certifier tolerance on energies and probabilities.
pub const CERT_TOL: f64 = 1e-10;

/// Diagonalize on the physical sector and verify the ground space and the
/// zero-energy probability of `|x⟩|T⟩_c`.
pub fn certify_ground_space(fk: &FKOperator, x: usize) -> Result<CertificationReport> {
    let n = fk.circuit.num_qubits();
    if x >= 1 << n {
        return Err(Error::validation(format!(
            "input: {x} out of range for n={n}"
        )));
    }
    let phys = fk.physical_indices();
    let h = fk.total()?;
    let spec = eigendecompose(&h.restrict(&phys)?)?;
    let prop_min = eigendecompose(&fk.prop.restrict(&phys)?)?.eigenvalues[0];

    let tol = policy().degeneracy_tol;
    let ground = spec.eigenvalues[0];
    let ground_dim = spec
        .eigenvalues
        .iter()
        .take_while(|&&v| v - ground <= tol)
        .count();
    let gap = spec
        .eigenvalues
        .get(ground_dim)
        .map(|v| v - ground)
        .unwrap_or(1.0);

    let labels = fk.ground_labels();
    let mut residual = 0.0f64;
    for &y in &labels {
        let psi = history_state(&fk.circuit, y)?;
        let r: f64 = h.apply(psi.amplitudes()).iter().map(|v| v.norm_sqr()).sum();
        residual = residual.max(r.sqrt());
    }

    let readout = fk.readout_state(x)?;
    let pos: Vec<C64> = phys.iter().map(|&i| readout.amplitude(i)).collect();
    let measured: f64 = (0..ground_dim)
        .map(|j| {
            spec.eigenvectors
                .column(j)
                .iter()
                .zip(&pos)
                .map(|(v, r)| v.conj() * r)
                .sum::<C64>()
                .norm_sqr()
        })
        .sum();
    let pgs_check = PgsCheck {
        input: x,
        expected: fk.expected_pgs(x)?,
        measured,
    };
    let pass = ground.abs() <= CERT_TOL
        && prop_min >= -CERT_TOL
        && ground_dim == labels.len()
        && residual <= CERT_TOL
        && (pgs_check.expected - pgs_check.measured).abs() <= CERT_TOL;
    Ok(CertificationReport {
        ground_energy: ground,
        gap,
        ground_dim,
        expected_ground_dim: labels.len(),
        history_residual: residual,
        prop_min_eigenvalue: prop_min,
        pgs_check,
        pass,
    })
}

/// `g₁ + g₂ + min(Δ₁, Δ₂)(1 − cos θ)`.
pub fn geometric_lemma_bound(
    g1: f64,
    g2: f64,
    delta1: f64,
    delta2: f64,
    cos_theta: f64,
) -> Result<f64> {
    if !(delta1 > 0.0 && delta2 > 0.0) {
        return Err(Error::validation("gaps must be positive"));
    }
    if !(0.0..=1.0).contains(&cos_theta) {
        return Err(Error::validation(format!(
            "cos_theta: {cos_theta} not in [0,1]"
        )));
    }
    Ok(g1 + g2 + delta1.min(delta2) * (1.0 - cos_theta))
}

/// Geometric-lemma check on the invariant subspace `Ω^{(y)}` of a string
/// `y ∉ S*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricCheck {
    pub y: usize,
    /// Penalty `C_y` (number of violated bits).
    pub penalty: f64,
    /// Gap of `H_prop` on `Ω^{(y)}`.
    pub delta1: f64,
    /// Gap of `H_pen` on `Ω^{(y)}`.
    pub delta2: f64,
    /// `‖Π₂ ψ^{(y)}‖`, measured.
    pub cos_theta: f64,
    /// `√(T/(T+1))`.
    pub cos_theta_analytic: f64,
    pub bound: f64,
    pub lowest_energy: f64,
    /// `‖(1 − Π_Ω) H Π_Ω‖`.
    pub invariance_defect: f64,
    pub pass: bool,
}

/// Restrict `H = H_prop + H_pen` to `Ω^{(y)}`, measure its lowest energy and
/// compare against the geometric-lemma bound.
pub fn geometric_check(fk: &FKOperator, y: usize) -> Result<GeometricCheck> {
    let FkTerms::Pen { marginal } = &fk.terms else {
        return Err(Error::validation(
            "geometric check needs a penalty operator",
        ));
    };
    let n = fk.circuit.num_qubits();
    if marginal.contains(n, y) {
        return Err(Error::validation(format!(
            "y = {y} lies in the marginal set"
        )));
    }
    let etas = eta_states(&fk.circuit, y)?;
    let dim = etas[0].dim();
    let m = etas.len();
    let basis = DMatrix::from_fn(dim, m, |r, c| etas[c].amplitude(r));
    let project = |h: &HermitianOperator| -> Result<(HermitianOperator, f64)> {
        let hb = DMatrix::from_fn(dim, m, |r, c| h.apply(etas[c].amplitudes())[r]);
        let small = basis.adjoint() * &hb;
        let leak = &hb - &basis * &small;
        let small = (&small + small.adjoint()) * C64::new(0.5, 0.0);
        Ok((
            HermitianOperator::from_dense(small)?,
            crate::linalg::operator_norm(&leak),
        ))
    };
    let (prop, d1) = project(&fk.prop)?;
    let (pen, d2) = project(fk.extra.as_ref().expect("penalty operator is present"))?;
    let (full, d3) = project(&fk.total()?)?;

    let second_level = |h: &HermitianOperator| -> Result<f64> {
        let e = eigendecompose(h)?.eigenvalues;
        let tol = policy().degeneracy_tol;
        Ok(e.iter()
            .copied()
            .find(|v| v - e[0] > tol)
            .map(|v| v - e[0])
            .unwrap_or(0.0))
    };
    let delta1 = second_level(&prop)?;
    let delta2 = second_level(&pen)?;
    let psi = history_state(&fk.circuit, y)?;
    let tail: f64 = etas[1..].iter().map(|e| e.inner(&psi).norm_sqr()).sum();
    let cos_theta = tail.sqrt().min(1.0);
    let t = fk.clock.steps() as f64;
    let bound = geometric_lemma_bound(0.0, 0.0, delta1, delta2, cos_theta)?;
    let lowest = eigendecompose(&full)?.eigenvalues[0];
    let defect = d1.max(d2).max(d3);
    Ok(GeometricCheck {
        y,
        penalty: marginal.violations(n, y) as f64,
        delta1,
        delta2,
        cos_theta,
        cos_theta_analytic: (t / (t + 1.0)).sqrt(),
        bound,
        lowest_energy: lowest,
        invariance_defect: defect,
        pass: lowest >= bound - CERT_TOL && defect <= CERT_TOL,
    })
}
