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

//! Exact complex linear algebra used as the oracle layer by every other
//! module: state vectors, Hermitian operators, spectra and distribution
//! distances.

mod distribution;
mod eigen;
mod operator;
mod state;

pub use distribution::{l1_distance, total_variation, DiscreteDistribution};
pub use eigen::{eigendecompose, lowest_levels, spectral_gap, GapInfo, SpectralDecomposition};
pub use operator::{
    operator_norm, operator_norm_bound, operator_norm_distance, CsrMatrix, HermitianOperator,
};
pub use state::StateVector;

pub use num_complex::Complex64 as C64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
