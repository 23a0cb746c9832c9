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

//! Exponential fast-forwarding of diagonalizable Hamiltonians.
//!
//! The circuit rotates into the eigenbasis, writes an `a`-bit approximation
//! of `φ_z = f(z)·T mod 2π` into an ancilla, kicks it back as a phase,
//! uncomputes and rotates back. Uncomputation is exact for a deterministic
//! `f`, so the ancilla is modelled implicitly: `U′ = U† diag(e^{−iφ̃_z}) U`.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::diag::DiagonalizableHamiltonian;
use crate::error::{Error, Result};
use crate::linalg::{eigendecompose, operator_norm_distance, HermitianOperator, C64};

/// How the phase is reduced to `a` bits of a full turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseRounding {
    /// `floor`, error below `2π·2^{−a}`.
    #[default]
    Truncate,
    /// Nearest, error at most `π·2^{−a}`.
    Round,
}

/// Evolution time and phase-register width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FFParams {
    pub time: f64,
    pub bits: u32,
    #[serde(default)]
    pub rounding: PhaseRounding,
}

impl FFParams {
    pub fn new(time: f64, bits: u32) -> Result<Self> {
        let p = Self {
            time,
            bits,
            rounding: PhaseRounding::Truncate,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn rounded(mut self) -> Self {
        self.rounding = PhaseRounding::Round;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.time > 0.0 && self.time.is_finite()) {
            return Err(Error::validation(format!(
                "time: {} must be positive",
                self.time
            )));
        }
        if !(1..=52).contains(&self.bits) {
            return Err(Error::validation(format!(
                "bits: {} must be in 1..=52",
                self.bits
            )));
        }
        Ok(())
    }

    /// Per-eigenvalue phase error bound: `2π·2^{−a}` (truncation) or
    /// `π·2^{−a}` (rounding).
    pub fn bound(&self) -> f64 {
        let scale = (-(self.bits as f64)).exp2();
        match self.rounding {
            PhaseRounding::Truncate => TAU * scale,
            PhaseRounding::Round => PI * scale,
        }
    }
}

/// `φ̃ = 2π·⌊frac(f·T/2π)·2^a⌋/2^a` (or rounded), in `[0, 2π)`.
///
/// The reduction happens in units of full turns, so times that are exact
/// multiples of `2π` stay exact.
pub fn approximate_phase(f: f64, p: &FFParams) -> f64 {
    let turns = (f * (p.time / TAU)).rem_euclid(1.0);
    let scale = (p.bits as f64).exp2();
    let k = match p.rounding {
        PhaseRounding::Truncate => (turns * scale).floor(),
        PhaseRounding::Round => (turns * scale).round(),
    };
    TAU * (k / scale).rem_euclid(1.0)
}

/// `U′ = U† diag(e^{−iφ̃_z}) U`.
pub fn build_ff_unitary(h: &DiagonalizableHamiltonian, p: &FFParams) -> Result<DMatrix<C64>> {
    p.validate()?;
    let u = h.diagonalizer().unitary()?;
    let mut du = u.clone();
    for (z, f) in h.eigen().values().into_iter().enumerate() {
        let phase = C64::from_polar(1.0, -approximate_phase(f, p));
        du.row_mut(z).iter_mut().for_each(|a| *a *= phase);
    }
    Ok(u.adjoint() * du)
}

/// `e^{−iHT}` from a full eigendecomposition.
pub fn exact_evolution(h: &HermitianOperator, time: f64) -> Result<DMatrix<C64>> {
    Ok(eigendecompose(h)?.exp_i(-time))
}

/// Outcome of comparing `U′` against the exact evolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FFReport {
    pub time: f64,
    pub bits: u32,
    pub distance: f64,
    pub bound: f64,
    pub pass: bool,
}

/// `‖U′ − e^{−iH̃T}‖` against the bound for the chosen rounding.
///
/// The exact side is computed from the operator (its Pauli form when
/// present), independently of the phase-table construction.
pub fn verify_ff(h: &DiagonalizableHamiltonian, p: &FFParams) -> Result<FFReport> {
    let approx = build_ff_unitary(h, p)?;
    let exact = exact_evolution(&h.operator()?, p.time)?;
    let distance = operator_norm_distance(&approx, &exact)?;
    let bound = p.bound();
    Ok(FFReport {
        time: p.time,
        bits: p.bits,
        distance,
        bound,
        pass: distance <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitIR;
    use crate::diag::{build_h2d_preset, EigenFunction, WeightPreset};
    use crate::iqp::LatticeSpec;
    use crate::linalg::operator_norm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h2d_u(r: usize, c: usize) -> DiagonalizableHamiltonian {
        build_h2d_preset(&LatticeSpec::new(r, c).unwrap(), WeightPreset::U).unwrap()
    }

    #[test]
    fn zero_function_gives_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = CircuitIR::random(2, 6, &mut rng).unwrap();
        let h =
            DiagonalizableHamiltonian::new(c, EigenFunction::new(vec![0.0, 0.0]).unwrap()).unwrap();
        let u = build_ff_unitary(&h, &FFParams::new(3.7, 1).unwrap()).unwrap();
        assert!(operator_norm(&(u - DMatrix::identity(4, 4))) < 1e-14);
        let r = verify_ff(&h, &FFParams::new(1.0, 1).unwrap()).unwrap();
        assert!(r.pass && r.distance < 1e-14);
    }

    #[test]
    fn periodic_time_gives_identity() {
        // f(z) = z/16, T = 32π ⇒ f·T ∈ 2π·ℤ.
        let h = h2d_u(2, 2);
        for a in [1, 5, 17] {
            let u = build_ff_unitary(&h, &FFParams::new(32.0 * PI, a).unwrap()).unwrap();
            assert!(operator_norm(&(u - DMatrix::identity(16, 16))) < 1e-12);
        }
    }

    #[test]
    fn lattice_examples_within_bound() {
        let r = verify_ff(&h2d_u(2, 2), &FFParams::new(1e6, 20).unwrap()).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_ff(&h2d_u(1, 2), &FFParams::new(2f64.powi(20), 16).unwrap()).unwrap();
        assert!(r.pass && r.bound < 9.6e-5 + 1e-7, "{r:?}");
        let p = FFParams::new(2f64.powi(20), 16).unwrap().rounded();
        let r = verify_ff(&h2d_u(1, 2), &p).unwrap();
        assert!(r.pass && r.distance <= PI * 2f64.powi(-16));
    }

    #[test]
    fn generic_hamiltonians_never_exceed_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let c = CircuitIR::random(2, 8, &mut rng).unwrap();
            let w = vec![rng.random_range(0.0..0.5), rng.random_range(0.0..0.5)];
            let h = DiagonalizableHamiltonian::new(c, EigenFunction::new(w).unwrap()).unwrap();
            let r = verify_ff(&h, &FFParams::new(1.0, 2).unwrap()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn phase_is_exact_on_eigenstates() {
        let h = h2d_u(2, 2);
        let p = FFParams::new(12345.678, 8).unwrap();
        let uff = build_ff_unitary(&h, &p).unwrap();
        let u = h.diagonalizer().unitary().unwrap();
        for z in 0..16 {
            let eig = u.row(z).adjoint();
            let phi = approximate_phase(z as f64 / 16.0, &p);
            let out = &uff * &eig;
            let expect = &eig * C64::from_polar(1.0, -phi);
            assert!((out - expect).norm() < 1e-12);
            let exact = (z as f64 / 16.0 * p.time).rem_euclid(TAU);
            let diff = (exact - phi).rem_euclid(TAU);
            assert!(diff < p.bound() + 1e-9 || TAU - diff < 1e-9);
        }
    }

    #[test]
    fn params_validation() {
        assert!(FFParams::new(0.0, 4).is_err());
        assert!(FFParams::new(1.0, 0).is_err());
    }
}
