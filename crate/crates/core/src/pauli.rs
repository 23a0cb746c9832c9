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

//! Real linear combinations of Pauli strings.
//!
//! A string is stored symplectically as an `(x, z)` pair of bit masks in the
//! basis-index layout (qubit 0 is the most significant bit), so that
//! `P|b⟩ = i^{#Y} (−1)^{|b∧z|} |b⊕x⟩`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, C64, ZERO};

/// One Pauli string as `(x, z)` masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    pub x: usize,
    pub z: usize,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0 };

    /// Parse `"XIZY"`; the first character acts on qubit 0.
    pub fn parse(s: &str) -> Result<(usize, Self)> {
        let n = s.chars().count();
        if n == 0 || n > usize::BITS as usize - 1 {
            return Err(Error::validation(format!("string: bad length {n}")));
        }
        let mut p = PauliString::IDENTITY;
        for (q, ch) in s.chars().enumerate() {
            let bit = 1usize << (n - 1 - q);
            match ch.to_ascii_uppercase() {
                'I' => {}
                'X' => p.x |= bit,
                'Z' => p.z |= bit,
                'Y' => {
                    p.x |= bit;
                    p.z |= bit
                }
                other => {
                    return Err(Error::validation(format!(
                        "string: '{other}' is not a Pauli letter"
                    )))
                }
            }
        }
        Ok((n, p))
    }

    /// Single-qubit letter at qubit `q`.
    pub fn single(n: usize, q: usize, letter: char) -> Result<Self> {
        if q >= n {
            return Err(Error::validation(format!(
                "qubit {q} out of range for n={n}"
            )));
        }
        let mut s: Vec<char> = vec!['I'; n];
        s[q] = letter;
        Ok(Self::parse(&s.into_iter().collect::<String>())?.1)
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// `P|b⟩ = phase · |b⊕x⟩`.
    pub fn act(&self, b: usize) -> (usize, C64) {
        let sign = if (b & self.z).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        let phase = match self.y_count() % 4 {
            0 => C64::new(sign, 0.0),
            1 => C64::new(0.0, sign),
            2 => C64::new(-sign, 0.0),
            _ => C64::new(0.0, -sign),
        };
        (b ^ self.x, phase)
    }

    pub fn to_label(&self, n: usize) -> String {
        (0..n)
            .map(|q| {
                let bit = 1usize << (n - 1 - q);
                match (self.x & bit != 0, self.z & bit != 0) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    (true, true) => 'Y',
                }
            })
            .collect()
    }
}

/// On-disk Pauli term: `{ "coeff": f64, "string": "XIZ" }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: f64,
    pub string: String,
}

/// `Σ_k c_k P_k` with real coefficients; like terms are merged.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, terms: &[PauliTerm]) -> Result<Self> {
        let mut sum = Self::new(n);
        for (i, t) in terms.iter().enumerate() {
            let (len, p) = PauliString::parse(&t.string)
                .map_err(|e| Error::validation(format!("terms[{i}].{e}")))?;
            if len != n {
                return Err(Error::validation(format!(
                    "terms[{i}].string: length {len} does not match n={n}"
                )));
            }
            if !t.coeff.is_finite() {
                return Err(Error::validation(format!("terms[{i}].coeff: not finite")));
            }
            sum.add_term(t.coeff, p);
        }
        Ok(sum)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, coeff: f64, p: PauliString) {
        *self.terms.entry(p).or_insert(0.0) += coeff;
    }

    pub fn add(&mut self, other: &PauliSum) {
        for (&p, &c) in &other.terms {
            self.add_term(c, p);
        }
    }

    pub fn scaled(&self, a: f64) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(&p, &c)| (p, a * c)).collect(),
        }
    }

    /// Drop terms with `|c| ≤ tol`.
    pub fn pruned(mut self, tol: f64) -> PauliSum {
        self.terms.retain(|_, c| c.abs() > tol);
        self
    }

    /// `Σ|c_k|`, the triangle-inequality bound on `‖Σ c_k P_k‖`.
    pub fn norm_bound(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.get(p).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (PauliString, f64)> + '_ {
        self.terms.iter().map(|(&p, &c)| (p, c))
    }

    pub fn to_terms(&self) -> Vec<PauliTerm> {
        self.iter()
            .map(|(p, coeff)| PauliTerm {
                coeff,
                string: p.to_label(self.n),
            })
            .collect()
    }

    fn triplets(&self) -> Vec<(usize, usize, C64)> {
        let dim = 1usize << self.n;
        let mut out = Vec::with_capacity(dim * self.terms.len());
        for (p, c) in self.iter() {
            for b in 0..dim {
                let (row, phase) = p.act(b);
                out.push((row, b, phase * c));
            }
        }
        out
    }

    /// Sparse (or dense, for small sizes) Hermitian matrix.
    pub fn to_operator(&self) -> Result<HermitianOperator> {
        HermitianOperator::from_triplets(1usize << self.n, self.triplets())
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for (r, c, v) in self.triplets() {
            m[(r, c)] += v;
        }
        m
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(p, c)| format!("{c:+} {}", p.to_label(self.n)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_matrices() {
        let dense = |s: &str| {
            let (n, p) = PauliString::parse(s).unwrap();
            let mut sum = PauliSum::new(n);
            sum.add_term(1.0, p);
            sum.to_dense()
        };
        let y = dense("Y");
        assert_eq!(y[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], C64::new(0.0, 1.0));
        let z = dense("Z");
        assert_eq!(z[(1, 1)], C64::new(-1.0, 0.0));
        // Z on qubit 0 is the MSB: ZI = diag(1,1,−1,−1)
        let zi = dense("ZI");
        assert_eq!(zi[(1, 1)].re, 1.0);
        assert_eq!(zi[(2, 2)].re, -1.0);
    }

    #[test]
    fn labels_round_trip_and_merge() {
        let terms = vec![
            PauliTerm {
                coeff: 0.5,
                string: "XYZ".into(),
            },
            PauliTerm {
                coeff: 0.25,
                string: "xyz".into(),
            },
            PauliTerm {
                coeff: -1.0,
                string: "III".into(),
            },
        ];
        let s = PauliSum::from_terms(3, &terms).unwrap();
        assert_eq!(s.len(), 2);
        let (_, xyz) = PauliString::parse("XYZ").unwrap();
        assert_eq!(s.coefficient(&xyz), 0.75);
        assert_eq!(xyz.to_label(3), "XYZ");
        assert!(PauliSum::from_terms(2, &terms).is_err());
        assert!(PauliString::parse("XQ").is_err());
    }

    #[test]
    fn operator_is_hermitian() {
        let terms = vec![
            PauliTerm {
                coeff: 0.3,
                string: "XY".into(),
            },
            PauliTerm {
                coeff: -0.7,
                string: "ZZ".into(),
            },
            PauliTerm {
                coeff: 1.1,
                string: "YI".into(),
            },
        ];
        let s = PauliSum::from_terms(2, &terms).unwrap();
        let m = s.to_dense();
        assert!((m.adjoint() - &m).norm() < 1e-15);
        let op = s.to_operator().unwrap();
        assert!((op.to_dense() - m).norm() < 1e-15);
    }
}
