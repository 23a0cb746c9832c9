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

//! Process-wide numeric tolerances and size guards.

use std::sync::RwLock;

/// Tolerances and dimension guards shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    /// Reconstruction and operator-identity tolerance.
    pub reconstruction_tol: f64,
    /// Normalization tolerance for states and distributions.
    pub normalization_tol: f64,
    /// Two eigenvalues closer than this are treated as one level.
    pub degeneracy_tol: f64,
    /// Largest dimension stored densely; above it operators are sparse and
    /// only extremal eigenvalues are computed.
    pub dense_limit: usize,
    /// Largest dimension for a full dense eigendecomposition.
    pub full_spectrum_limit: usize,
    /// Desk-scale guard for any spectral computation.
    pub max_dim: usize,
}

impl NumericPolicy {
    pub const DEFAULT: NumericPolicy = NumericPolicy {
        reconstruction_tol: 1e-10,
        normalization_tol: 1e-12,
        degeneracy_tol: 1e-9,
        dense_limit: 1 << 10,
        full_spectrum_limit: 1 << 12,
        max_dim: 1 << 14,
    };
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self::DEFAULT
    }
}

static POLICY: RwLock<NumericPolicy> = RwLock::new(NumericPolicy::DEFAULT);

/// Current global policy.
pub fn policy() -> NumericPolicy {
    *POLICY.read().unwrap_or_else(|e| e.into_inner())
}

/// Replace the global policy, returning the previous one.
pub fn set_policy(p: NumericPolicy) -> NumericPolicy {
    let mut guard = POLICY.write().unwrap_or_else(|e| e.into_inner());
    std::mem::replace(&mut *guard, p)
}
