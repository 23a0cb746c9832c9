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

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::policy;

/// A probability vector over a finite support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DiscreteDistribution {
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    /// Validate nonnegativity and normalization. Entries above `-tol` are
    /// clamped to zero so that rounding noise is not an error.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        let tol = policy().normalization_tol;
        if probs.is_empty() {
            return Err(Error::validation("distribution has empty support"));
        }
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -tol {
                return Err(Error::validation(format!("invalid probability {p}")));
            }
            *p = p.max(0.0);
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::validation(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Normalize nonnegative weights.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::validation("weights must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::validation("weights sum to zero"));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    /// Point mass at `index`.
    pub fn point(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::validation(format!(
                "index {index} outside support {len}"
            )));
        }
        let mut p = vec![0.0; len];
        p[index] = 1.0;
        Ok(Self { probs: p })
    }

    pub fn uniform(len: usize) -> Result<Self> {
        Self::from_weights(vec![1.0; len])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }

    /// `(1 − t)·self + t·other`.
    pub fn mix(&self, other: &DiscreteDistribution, t: f64) -> Result<Self> {
        check_len(self, other)?;
        Self::new(
            self.probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect(),
        )
    }
}

impl TryFrom<Vec<f64>> for DiscreteDistribution {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DiscreteDistribution> for Vec<f64> {
    fn from(d: DiscreteDistribution) -> Vec<f64> {
        d.probs
    }
}

fn check_len(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::validation(format!(
            "support sizes differ: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

/// `Σ|p_i − q_i|`, the convention every bound in this crate is checked in.
pub fn l1_distance(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    check_len(p, q)?;
    Ok(p.probs
        .iter()
        .zip(&q.probs)
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// `½ Σ|p_i − q_i|`.
pub fn total_variation(p: &DiscreteDistribution, q: &DiscreteDistribution) -> Result<f64> {
    Ok(0.5 * l1_distance(p, q)?)
}
