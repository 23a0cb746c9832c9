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

//! Gate-list circuits, exact state-vector simulation and the brute-force
//! marginal-probability oracle.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DiscreteDistribution, StateVector, C64, ONE, ZERO};
use crate::policy::policy;

/// Named or explicit one- and two-qubit unitaries.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    I,
    H,
    X,
    Y,
    Z,
    S,
    T,
    /// Controlled-X; the first target is the control.
    Cx,
    Cz,
    /// `exp(−iθX/2)`.
    Rx(f64),
    /// `exp(−iθZ/2)`.
    Rz(f64),
    /// `exp(−iθ X⊗X/2)`.
    Rxx(f64),
    /// Explicit row-major 2×2 or 4×4 unitary.
    Unitary(Vec<C64>),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Rxx(_) => 2,
            GateKind::Unitary(m) if m.len() == 16 => 2,
            _ => 1,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::Cx => "CX",
            GateKind::Cz => "CZ",
            GateKind::Rx(_) => "RX",
            GateKind::Rz(_) => "RZ",
            GateKind::Rxx(_) => "RXX",
            GateKind::Unitary(_) => "U",
        }
    }

    /// Row-major matrix; qubit order within the matrix follows `targets`.
    pub fn matrix(&self) -> Vec<C64> {
        let c = |re: f64, im: f64| C64::new(re, im);
        let h = FRAC_1_SQRT_2;
        match self {
            GateKind::I => vec![ONE, ZERO, ZERO, ONE],
            GateKind::H => vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)],
            GateKind::X => vec![ZERO, ONE, ONE, ZERO],
            GateKind::Y => vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO],
            GateKind::Z => vec![ONE, ZERO, ZERO, -ONE],
            GateKind::S => vec![ONE, ZERO, ZERO, c(0.0, 1.0)],
            GateKind::T => vec![ONE, ZERO, ZERO, C64::from_polar(1.0, FRAC_PI_4)],
            GateKind::Rx(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                vec![c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]
            }
            GateKind::Rz(t) => vec![
                C64::from_polar(1.0, -t / 2.0),
                ZERO,
                ZERO,
                C64::from_polar(1.0, t / 2.0),
            ],
            GateKind::Cx => {
                let mut m = vec![ZERO; 16];
                m[0] = ONE;
                m[5] = ONE;
                m[11] = ONE;
                m[14] = ONE;
                m
            }
            GateKind::Cz => {
                let mut m = vec![ZERO; 16];
                m[0] = ONE;
                m[5] = ONE;
                m[10] = ONE;
                m[15] = -ONE;
                m
            }
            GateKind::Rxx(t) => {
                let (s, co) = (t / 2.0).sin_cos();
                let mut m = vec![ZERO; 16];
                for i in 0..4 {
                    m[i * 4 + i] = c(co, 0.0);
                    m[i * 4 + (3 - i)] = c(0.0, -s);
                }
                m
            }
            GateKind::Unitary(m) => m.clone(),
        }
    }

    fn adjoint(&self) -> GateKind {
        match self {
            GateKind::I
            | GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::Cx
            | GateKind::Cz => self.clone(),
            GateKind::Rx(t) => GateKind::Rx(-t),
            GateKind::Rz(t) => GateKind::Rz(-t),
            GateKind::Rxx(t) => GateKind::Rxx(-t),
            _ => {
                let m = self.matrix();
                let d = if m.len() == 4 { 2 } else { 4 };
                let mut adj = vec![ZERO; m.len()];
                for r in 0..d {
                    for c in 0..d {
                        adj[r * d + c] = m[c * d + r].conj();
                    }
                }
                GateKind::Unitary(adj)
            }
        }
    }
}

/// A gate with its target qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        if targets.len() != kind.arity() {
            return Err(Error::validation(format!(
                "targets: gate {} acts on {} qubit(s), got {}",
                kind.name(),
                kind.arity(),
                targets.len()
            )));
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(Error::validation("targets: gate targets must be distinct"));
        }
        if let GateKind::Unitary(m) = &kind {
            check_unitary(m)?;
        }
        Ok(Self { kind, targets })
    }

    pub fn one(kind: GateKind, q: usize) -> Result<Self> {
        Self::new(kind, vec![q])
    }

    pub fn two(kind: GateKind, a: usize, b: usize) -> Result<Self> {
        Self::new(kind, vec![a, b])
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn adjoint(&self) -> Gate {
        Gate {
            kind: self.kind.adjoint(),
            targets: self.targets.clone(),
        }
    }

    /// Apply in place to a full amplitude vector of `n` qubits.
    pub(crate) fn apply(&self, n: usize, amps: &mut [C64]) {
        let m = self.kind.matrix();
        match self.targets.as_slice() {
            [q] => {
                let bit = 1usize << (n - 1 - q);
                for i in 0..amps.len() {
                    if i & bit == 0 {
                        let (a0, a1) = (amps[i], amps[i | bit]);
                        amps[i] = m[0] * a0 + m[1] * a1;
                        amps[i | bit] = m[2] * a0 + m[3] * a1;
                    }
                }
            }
            [q0, q1] => {
                let (b0, b1) = (1usize << (n - 1 - q0), 1usize << (n - 1 - q1));
                for i in 0..amps.len() {
                    if i & (b0 | b1) == 0 {
                        let idx = [i, i | b1, i | b0, i | b0 | b1];
                        let a = idx.map(|k| amps[k]);
                        for r in 0..4 {
                            amps[idx[r]] = (0..4).map(|c| m[r * 4 + c] * a[c]).sum();
                        }
                    }
                }
            }
            _ => unreachable!("gate arity is validated on construction"),
        }
    }
}

fn check_unitary(m: &[C64]) -> Result<()> {
    let d = match m.len() {
        4 => 2,
        16 => 4,
        k => {
            return Err(Error::validation(format!(
                "matrix: expected 4 or 16 entries, got {k}"
            )))
        }
    };
    let mut defect = 0.0f64;
    for r in 0..d {
        for c in 0..d {
            let dot: C64 = (0..d).map(|k| m[k * d + r].conj() * m[k * d + c]).sum();
            let target = if r == c { ONE } else { ZERO };
            defect = defect.max((dot - target).norm());
        }
    }
    if defect > policy().normalization_tol {
        return Err(Error::validation(format!(
            "matrix: not unitary (defect {defect:e})"
        )));
    }
    Ok(())
}

/// An `n`-qubit circuit `U = U_T ⋯ U_1`; gates apply in sequence order.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitIR {
    n: usize,
    gates: Vec<Gate>,
}

impl CircuitIR {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("n: circuit needs at least one qubit"));
        }
        if gates.is_empty() {
            return Err(Error::validation("gates: circuit needs at least one gate"));
        }
        for (i, g) in gates.iter().enumerate() {
            if let Some(q) = g.targets.iter().find(|&&q| q >= n) {
                return Err(Error::validation(format!(
                    "gates[{i}].targets: qubit {q} out of range for n={n}"
                )));
            }
        }
        Ok(Self { n, gates })
    }

    /// Random circuit over {H, S, T, Rx, Rz, CX, CZ}.
    pub fn random<R: Rng + ?Sized>(n: usize, gate_count: usize, rng: &mut R) -> Result<Self> {
        let mut gates = Vec::with_capacity(gate_count);
        for _ in 0..gate_count {
            let two = n > 1 && rng.random_bool(0.35);
            let g = if two {
                let a = rng.random_range(0..n);
                let mut b = rng.random_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                let kind = if rng.random_bool(0.5) {
                    GateKind::Cx
                } else {
                    GateKind::Cz
                };
                Gate::two(kind, a, b)?
            } else {
                let q = rng.random_range(0..n);
                let angle = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
                let kind = match rng.random_range(0..5) {
                    0 => GateKind::H,
                    1 => GateKind::S,
                    2 => GateKind::T,
                    3 => GateKind::Rx(angle),
                    _ => GateKind::Rz(angle),
                };
                Gate::one(kind, q)?
            };
            gates.push(g);
        }
        Self::new(n, gates)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Gate count `T`.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// `U† = U_1† ⋯ U_T†`.
    pub fn inverse(&self) -> CircuitIR {
        CircuitIR {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
        }
    }

    /// The circuit truncated to its first `t` gates.
    pub fn prefix(&self, t: usize) -> Vec<Gate> {
        self.gates[..t].to_vec()
    }

    /// Dense `2^n × 2^n` unitary.
    pub fn unitary(&self) -> Result<DMatrix<C64>> {
        gates_unitary(self.n, &self.gates)
    }
}

/// Dense unitary of a gate list (identity for an empty list).
pub(crate) fn gates_unitary(n: usize, gates: &[Gate]) -> Result<DMatrix<C64>> {
    let dim = 1usize << n;
    let limit = policy().full_spectrum_limit;
    if dim > limit {
        return Err(Error::Resource {
            what: "dense unitary",
            dim,
            limit,
        });
    }
    let mut u = DMatrix::from_element(dim, dim, ZERO);
    let mut col = vec![ZERO; dim];
    for j in 0..dim {
        col.iter_mut().for_each(|a| *a = ZERO);
        col[j] = ONE;
        for g in gates {
            g.apply(n, &mut col);
        }
        u.column_mut(j).copy_from_slice(&col);
    }
    Ok(u)
}

fn check_qubits(circuit: &CircuitIR, input: &StateVector) -> Result<()> {
    if circuit.n != input.num_qubits() {
        return Err(Error::validation(format!(
            "circuit has {} qubits but input has {}",
            circuit.n,
            input.num_qubits()
        )));
    }
    Ok(())
}

/// `U_T ⋯ U_1 |input⟩`.
pub fn simulate(circuit: &CircuitIR, input: &StateVector) -> Result<StateVector> {
    check_qubits(circuit, input)?;
    let mut out = input.clone();
    for g in &circuit.gates {
        g.apply(circuit.n, out.amplitudes_mut());
    }
    Ok(out)
}

/// `P_z = |⟨z|U|input⟩|²`.
pub fn output_distribution(
    circuit: &CircuitIR,
    input: &StateVector,
) -> Result<DiscreteDistribution> {
    let out = simulate(circuit, input)?;
    DiscreteDistribution::new(out.probabilities())
}

/// Fixes bit `bits[i]` at qubit `positions[i]`; selects the set
/// `S* = {y : y_{k_i} = b_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MarginalSpec {
    pub positions: Vec<usize>,
    pub bits: Vec<u8>,
}

impl MarginalSpec {
    pub fn new(positions: Vec<usize>, bits: Vec<u8>) -> Result<Self> {
        let spec = Self { positions, bits };
        spec.check_shape()?;
        Ok(spec)
    }

    fn check_shape(&self) -> Result<()> {
        if self.positions.len() != self.bits.len() {
            return Err(Error::validation(format!(
                "marginal: {} positions but {} bits",
                self.positions.len(),
                self.bits.len()
            )));
        }
        if self.positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation(
                "marginal.positions: must be strictly increasing",
            ));
        }
        if let Some(b) = self.bits.iter().find(|&&b| b > 1) {
            return Err(Error::validation(format!(
                "marginal.bits: {b} is not a bit"
            )));
        }
        Ok(())
    }

    /// Check the spec against a qubit count.
    pub fn validate(&self, n: usize) -> Result<()> {
        self.check_shape()?;
        if let Some(p) = self.positions.iter().find(|&&p| p >= n) {
            return Err(Error::validation(format!(
                "marginal.positions: {p} out of range for n={n}"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Whether basis index `y` lies in `S*`.
    pub fn contains(&self, n: usize, y: usize) -> bool {
        self.violations(n, y) == 0
    }

    /// Number of fixed positions where `y` disagrees with the spec.
    pub fn violations(&self, n: usize, y: usize) -> usize {
        self.positions
            .iter()
            .zip(&self.bits)
            .filter(|(&p, &b)| ((y >> (n - 1 - p)) & 1) as u8 != b)
            .count()
    }

    /// Enumerate the `2^{n−l}` members of `S*`.
    pub fn members(&self, n: usize) -> Vec<usize> {
        let free: Vec<usize> = (0..n).filter(|q| !self.positions.contains(q)).collect();
        let base = self
            .positions
            .iter()
            .zip(&self.bits)
            .fold(0usize, |acc, (&p, &b)| acc | ((b as usize) << (n - 1 - p)));
        (0..1usize << free.len())
            .map(|k| {
                free.iter().enumerate().fold(base, |acc, (i, &q)| {
                    let bit = (k >> (free.len() - 1 - i)) & 1;
                    acc | (bit << (n - 1 - q))
                })
            })
            .collect()
    }
}

impl FromStr for MarginalSpec {
    type Err = Error;

    /// Parse `"k1=b1,k2=b2"`; the empty string is the empty spec.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, b) = part
                .split_once('=')
                .ok_or_else(|| Error::validation(format!("marginal: '{part}' is not k=b")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::validation(format!("marginal: bad position '{k}'")))?;
            let b: u8 = b
                .trim()
                .parse()
                .map_err(|_| Error::validation(format!("marginal: bad bit '{b}'")))?;
            pairs.push((k, b));
        }
        pairs.sort_unstable();
        let (positions, bits) = pairs.into_iter().unzip();
        Self::new(positions, bits)
    }
}

impl fmt::Display for MarginalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .positions
            .iter()
            .zip(&self.bits)
            .map(|(k, b)| format!("{k}={b}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `p = Σ_{y∈S*} |⟨y|U|x⟩|²`, summed exactly over `S*`.
pub fn marginal_probability(circuit: &CircuitIR, x: usize, spec: &MarginalSpec) -> Result<f64> {
    spec.validate(circuit.n)?;
    if spec.is_empty() {
        return Ok(1.0);
    }
    let out = simulate(circuit, &StateVector::basis(circuit.n, x)?)?;
    Ok(spec
        .members(circuit.n)
        .into_iter()
        .map(|y| out.amplitude(y).norm_sqr())
        .sum())
}

/// On-disk gate record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub kind: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
}

/// On-disk circuit record: `{ "n": int, "gates": [...] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub n: usize,
    pub gates: Vec<GateSpec>,
}

impl TryFrom<&GateSpec> for GateKind {
    type Error = Error;

    fn try_from(g: &GateSpec) -> Result<GateKind> {
        let param = || -> Result<f64> {
            match g.params.as_deref() {
                Some([t]) => Ok(*t),
                _ => Err(Error::validation(format!(
                    "params: gate {} needs exactly one angle",
                    g.kind
                ))),
            }
        };
        Ok(match g.kind.to_ascii_uppercase().as_str() {
            "I" | "ID" => GateKind::I,
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "S" => GateKind::S,
            "T" => GateKind::T,
            "CX" | "CNOT" => GateKind::Cx,
            "CZ" => GateKind::Cz,
            "RX" => GateKind::Rx(param()?),
            "RZ" => GateKind::Rz(param()?),
            "RXX" => GateKind::Rxx(param()?),
            "U" | "UNITARY" => {
                let m = g
                    .matrix
                    .as_ref()
                    .ok_or_else(|| Error::validation("matrix: explicit gate needs a matrix"))?;
                GateKind::Unitary(m.iter().map(|[re, im]| C64::new(*re, *im)).collect())
            }
            other => return Err(Error::validation(format!("kind: unknown gate '{other}'"))),
        })
    }
}

impl TryFrom<&CircuitSpec> for CircuitIR {
    type Error = Error;

    fn try_from(spec: &CircuitSpec) -> Result<CircuitIR> {
        let gates = spec
            .gates
            .iter()
            .enumerate()
            .map(|(i, g)| {
                GateKind::try_from(g)
                    .and_then(|k| Gate::new(k, g.targets.clone()))
                    .map_err(|e| match e {
                        Error::Validation(m) => Error::Validation(format!("gates[{i}].{m}")),
                        other => other,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        CircuitIR::new(spec.n, gates)
    }
}

impl From<&CircuitIR> for CircuitSpec {
    fn from(c: &CircuitIR) -> CircuitSpec {
        let gates = c
            .gates
            .iter()
            .map(|g| {
                let (params, matrix) = match &g.kind {
                    GateKind::Rx(t) | GateKind::Rz(t) | GateKind::Rxx(t) => (Some(vec![*t]), None),
                    GateKind::Unitary(m) => (None, Some(m.iter().map(|z| [z.re, z.im]).collect())),
                    _ => (None, None),
                };
                GateSpec {
                    kind: g.kind.name().to_string(),
                    targets: g.targets.clone(),
                    params,
                    matrix,
                }
            })
            .collect();
        CircuitSpec { n: c.n, gates }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn basic_simulations() {
        let id = CircuitIR::new(1, vec![Gate::one(GateKind::I, 0).unwrap()]).unwrap();
        let out = simulate(&id, &StateVector::zero(1)).unwrap();
        assert_eq!(out, StateVector::zero(1));

        let h = CircuitIR::new(1, vec![Gate::one(GateKind::H, 0).unwrap()]).unwrap();
        let out = simulate(&h, &StateVector::zero(1)).unwrap();
        let r = C64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(out.amplitude(0), r) && close(out.amplitude(1), r));
        assert_eq!(
            output_distribution(&h, &StateVector::zero(1))
                .unwrap()
                .probs()
                .len(),
            2
        );

        let ghz = ghz();
        let out = simulate(&ghz, &StateVector::zero(2)).unwrap();
        assert!(close(out.amplitude(0b00), r));
        assert!(close(out.amplitude(0b11), r));
        assert!(close(out.amplitude(0b01), ZERO));
        assert!(simulate(&ghz, &StateVector::zero(3)).is_err());
    }

    fn ghz() -> CircuitIR {
        CircuitIR::new(
            2,
            vec![
                Gate::one(GateKind::H, 0).unwrap(),
                Gate::two(GateKind::Cx, 0, 1).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn marginal_examples() {
        let id = CircuitIR::new(2, vec![Gate::one(GateKind::I, 0).unwrap()]).unwrap();
        let fix0 = MarginalSpec::new(vec![0], vec![0]).unwrap();
        assert_eq!(marginal_probability(&id, 0, &fix0).unwrap(), 1.0);

        let h = CircuitIR::new(1, vec![Gate::one(GateKind::H, 0).unwrap()]).unwrap();
        let fix1 = MarginalSpec::new(vec![0], vec![1]).unwrap();
        assert!((marginal_probability(&h, 0, &fix1).unwrap() - 0.5).abs() < 1e-15);

        // |⟨01|U|00⟩|² + |⟨11|U|00⟩|² = 0 + 1/2
        let spec = MarginalSpec::new(vec![1], vec![1]).unwrap();
        let u = ghz().unitary().unwrap();
        let brute = u[(0b01, 0)].norm_sqr() + u[(0b11, 0)].norm_sqr();
        let p = marginal_probability(&ghz(), 0, &spec).unwrap();
        assert!((p - brute).abs() < 1e-15);
        assert!((p - 0.5).abs() < 1e-15);

        assert!(
            marginal_probability(&ghz(), 0, &MarginalSpec::new(vec![2], vec![0]).unwrap()).is_err()
        );
        assert_eq!(
            marginal_probability(&ghz(), 3, &MarginalSpec::default()).unwrap(),
            1.0
        );
    }

    #[test]
    fn marginal_spec_parsing_and_members() {
        let s: MarginalSpec = "2=0, 0=1".parse().unwrap();
        assert_eq!(s.positions, vec![0, 2]);
        assert_eq!(s.bits, vec![1, 0]);
        assert_eq!(s.to_string(), "0=1,2=0");
        assert_eq!(s.members(3), vec![0b100, 0b110]);
        assert!("0=2".parse::<MarginalSpec>().is_err());
        assert!("1=0,1=1".parse::<MarginalSpec>().is_err());
        assert!("x".parse::<MarginalSpec>().is_err());
        assert_eq!("".parse::<MarginalSpec>().unwrap(), MarginalSpec::default());
        assert_eq!(s.violations(3, 0b101), 1);
        assert_eq!(s.violations(3, 0b011), 2);
    }

    #[test]
    fn validation_names_fields() {
        let bad = CircuitSpec {
            n: 2,
            gates: vec![GateSpec {
                kind: "H".into(),
                targets: vec![5],
                params: None,
                matrix: None,
            }],
        };
        let err = CircuitIR::try_from(&bad).unwrap_err().to_string();
        assert!(err.contains("gates[0].targets"), "{err}");

        let bad = CircuitSpec {
            n: 1,
            gates: vec![GateSpec {
                kind: "U".into(),
                targets: vec![0],
                params: None,
                matrix: Some(vec![[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]]),
            }],
        };
        let err = CircuitIR::try_from(&bad).unwrap_err().to_string();
        assert!(err.contains("gates[0].matrix"), "{err}");
        assert!(Gate::two(GateKind::Cz, 1, 1).is_err());
        assert!(CircuitIR::new(1, vec![]).is_err());
    }

    #[test]
    fn json_round_trip_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = CircuitIR::random(3, 12, &mut rng).unwrap();
        let spec = CircuitSpec::from(&c);
        let text = serde_json::to_string(&spec).unwrap();
        let back =
            CircuitIR::try_from(&serde_json::from_str::<CircuitSpec>(&text).unwrap()).unwrap();
        assert_eq!(back, c);

        let u = c.unitary().unwrap();
        let ui = c.inverse().unitary().unwrap();
        let prod = &ui * &u;
        let err = crate::linalg::operator_norm(&(prod - DMatrix::identity(8, 8)));
        assert!(err < 1e-12);
    }
}
