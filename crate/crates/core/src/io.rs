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

//! On-disk formats: Hamiltonian, graph and input-state JSON, histogram CSV,
//! and atomic file writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitIR, CircuitSpec, MarginalSpec};
use crate::diag::{build_h2d, build_h2d_preset, DiagonalizableHamiltonian, WeightPreset};
use crate::energy::{EnergyDistribution, Histogram};
use crate::error::{Error, Result};
use crate::fk::FKOperator;
use crate::iqp::{build_input_state, LatticeSpec, ProductInput};
use crate::linalg::{eigendecompose, HermitianOperator, StateVector};
use crate::pauli::{PauliSum, PauliTerm};

/// Eigenvalue weights: a preset name or an explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsSpec {
    Preset(WeightPreset),
    List(Vec<f64>),
}

/// Hamiltonian file, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum HamiltonianFile {
    /// Lattice Hamiltonian with known diagonalizer.
    H2d {
        rows: usize,
        cols: usize,
        weights: WeightsSpec,
    },
    /// Real-coefficient Pauli sum.
    Pauli { n: usize, terms: Vec<PauliTerm> },
    /// Clock Hamiltonian for a circuit: with `marginal` the penalty form
    /// encoding the marginal query, otherwise the input-initialization form.
    Fk {
        circuit: CircuitSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        marginal: Option<String>,
    },
}

/// A Hamiltonian ready for computation.
#[derive(Debug, Clone)]
pub enum LoadedHamiltonian {
    Diagonal(DiagonalizableHamiltonian),
    Operator(HermitianOperator),
    Fk(FKOperator),
}

impl HamiltonianFile {
    pub fn load(&self) -> Result<LoadedHamiltonian> {
        Ok(match self {
            HamiltonianFile::H2d {
                rows,
                cols,
                weights,
            } => {
                let lattice = LatticeSpec::new(*rows, *cols)?;
                LoadedHamiltonian::Diagonal(match weights {
                    WeightsSpec::Preset(p) => build_h2d_preset(&lattice, *p)?,
                    WeightsSpec::List(w) => build_h2d(&lattice, w)?,
                })
            }
            HamiltonianFile::Pauli { n, terms } => {
                if *n == 0 {
                    return Err(Error::validation("n: must be at least 1"));
                }
                LoadedHamiltonian::Operator(PauliSum::from_terms(*n, terms)?.to_operator()?)
            }
            HamiltonianFile::Fk { circuit, marginal } => {
                let c = CircuitIR::try_from(circuit)?;
                LoadedHamiltonian::Fk(match marginal {
                    Some(m) => FKOperator::for_marginal(&c, parse_marginal(m)?)?,
                    None => FKOperator::with_init(c)?,
                })
            }
        })
    }
}

pub fn parse_marginal(s: &str) -> Result<MarginalSpec> {
    s.parse()
        .map_err(|e: Error| Error::validation(format!("marginal: {e}")))
}

impl LoadedHamiltonian {
    pub fn num_qubits(&self) -> usize {
        match self {
            LoadedHamiltonian::Diagonal(h) => h.num_qubits(),
            LoadedHamiltonian::Operator(h) => h.dim().trailing_zeros() as usize,
            LoadedHamiltonian::Fk(fk) => fk.num_qubits(),
        }
    }

    /// The operator whose energies are sampled; FK operators are scaled
    /// into `[0, 1]`.
    pub fn operator(&self) -> Result<HermitianOperator> {
        match self {
            LoadedHamiltonian::Diagonal(h) => h.operator(),
            LoadedHamiltonian::Operator(h) => Ok(h.clone()),
            LoadedHamiltonian::Fk(fk) => fk.scaled(),
        }
    }

    /// Ascending eigenvalues. Diagonalizable Hamiltonians use their exact
    /// eigenvalue function, so no numerical eigensolver is involved.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        match self {
            LoadedHamiltonian::Diagonal(h) => {
                let mut v = h.eigen().values();
                v.sort_by(f64::total_cmp);
                Ok(v)
            }
            _ => Ok(eigendecompose(&self.operator()?)?.eigenvalues),
        }
    }
}

/// Input state file: a product state `{theta, x}` or a basis state
/// `{basis}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputFile {
    Product(ProductInput),
    Basis { basis: usize },
}

impl InputFile {
    pub fn state(&self, n: usize) -> Result<StateVector> {
        match self {
            InputFile::Product(p) => {
                if p.num_qubits() != n {
                    return Err(Error::validation(format!(
                        "input: {} qubits, Hamiltonian has {n}",
                        p.num_qubits()
                    )));
                }
                build_input_state(p)
            }
            InputFile::Basis { basis } => {
                StateVector::basis(n, *basis).map_err(|e| Error::validation(format!("basis: {e}")))
            }
        }
    }
}

/// Read and parse a JSON file; parse errors carry the file name.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::validation(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Write via a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// `bin_index,energy,probability,counts`; `probability` is the sampler's
/// exact outcome distribution.
pub fn histogram_csv(dist: &EnergyDistribution, hist: &Histogram) -> String {
    let mut s = String::from("bin_index,energy,probability,counts\n");
    for (m, (p, c)) in dist.probs().iter().zip(&hist.counts).enumerate() {
        let _ = writeln!(s, "{m},{},{p},{c}", hist.grid.energy(m));
    }
    s
}

/// `index,eigenvalue`.
pub fn spectrum_csv(values: &[f64]) -> String {
    let mut s = String::from("index,eigenvalue\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(s, "{i},{v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamiltonian_files_round_trip() {
        for text in [
            r#"{"kind":"h2d","rows":2,"cols":2,"weights":"u"}"#,
            r#"{"kind":"h2d","rows":1,"cols":2,"weights":[0.5,0.25]}"#,
            r#"{"kind":"pauli","n":1,"terms":[]}"#,
            r#"{"kind":"fk","circuit":{"n":1,"gates":[{"kind":"H","targets":[0]}]},"marginal":"0=1"}"#,
        ] {
            let f: HamiltonianFile = serde_json::from_str(text).unwrap();
            let back: HamiltonianFile = serde_json::from_str(&to_json(&f).unwrap()).unwrap();
            assert_eq!(f, back);
            f.load().unwrap();
        }
        let u: HamiltonianFile =
            serde_json::from_str(r#"{"kind":"h2d","rows":2,"cols":2,"weights":"u"}"#).unwrap();
        let spec = u.load().unwrap().spectrum().unwrap();
        assert_eq!(spec, (0..16).map(|z| z as f64 / 16.0).collect::<Vec<_>>());
    }

    #[test]
    fn bad_files_name_the_field() {
        let e =
            serde_json::from_str::<HamiltonianFile>(r#"{"kind":"pauli","terms":[]}"#).unwrap_err();
        assert!(e.to_string().contains("`n`"), "{e}");
        let f: HamiltonianFile = serde_json::from_str(
            r#"{"kind":"fk","circuit":{"n":1,"gates":[{"kind":"H","targets":[3]}]}}"#,
        )
        .unwrap();
        let e = f.load().unwrap_err().to_string();
        assert!(e.contains("gates[0].targets"), "{e}");
    }

    #[test]
    fn inputs_parse() {
        let p: InputFile = serde_json::from_str(r#"{"theta":[0,0],"x":[1,0]}"#).unwrap();
        assert!(matches!(p, InputFile::Product(_)));
        let b: InputFile = serde_json::from_str(r#"{"basis":2}"#).unwrap();
        assert_eq!(b.state(2).unwrap().amplitude(2).re, 1.0);
        assert!(b.state(1).is_err());
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
    }
}
