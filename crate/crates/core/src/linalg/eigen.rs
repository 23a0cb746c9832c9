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

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{operator_norm, HermitianOperator, C64, ZERO};
use crate::error::{Error, Result};
use crate::policy::{policy, NumericPolicy};

/// Ascending eigenvalues with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<C64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, lam) in self.eigenvalues.iter().enumerate() {
            scaled.column_mut(j).scale_mut(*lam);
        }
        scaled * v.adjoint()
    }

    pub fn reconstruction_error(&self, h: &HermitianOperator) -> f64 {
        operator_norm(&(h.to_dense() - self.reconstruct()))
    }

    /// `‖V†V − I‖`.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.eigenvectors.adjoint() * &self.eigenvectors;
        operator_norm(&(g - DMatrix::identity(self.dim(), self.dim())))
    }

    /// Distinct levels `(value, multiplicity)` merged within `tol`.
    pub fn levels(&self, tol: f64) -> Vec<(f64, usize)> {
        group_levels(&self.eigenvalues, tol)
    }

    /// `|⟨v_i|ψ⟩|²` for every eigenvector.
    pub fn weights(&self, psi: &[C64]) -> Vec<f64> {
        let x = DVector::from_column_slice(psi);
        (0..self.dim())
            .map(|j| self.eigenvectors.column(j).dotc(&x).norm_sqr())
            .collect()
    }

    /// `exp(i t H) = V diag(e^{i t λ}) V†`.
    pub fn exp_i(&self, t: f64) -> DMatrix<C64> {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, lam) in self.eigenvalues.iter().enumerate() {
            let phase = C64::from_polar(1.0, t * lam);
            scaled.column_mut(j).iter_mut().for_each(|a| *a *= phase);
        }
        scaled * v.adjoint()
    }

    /// Projector onto eigenvectors whose eigenvalue satisfies `keep`.
    pub fn projector(&self, keep: impl Fn(f64) -> bool) -> DMatrix<C64> {
        let cols: Vec<usize> = (0..self.dim())
            .filter(|&j| keep(self.eigenvalues[j]))
            .collect();
        let v = self.eigenvectors.select_columns(&cols);
        &v * v.adjoint()
    }
}

fn group_levels(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut anchor = f64::NEG_INFINITY;
    for &v in sorted {
        match out.last_mut() {
            Some(last) if v - anchor <= tol => last.1 += 1,
            _ => {
                anchor = v;
                out.push((v, 1));
            }
        }
    }
    out
}

fn guard(dim: usize, limit: usize, what: &'static str) -> Result<()> {
    if dim > limit {
        return Err(Error::Resource { what, dim, limit });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian operator.
pub fn eigendecompose(h: &HermitianOperator) -> Result<SpectralDecomposition> {
    let p = policy();
    guard(h.dim(), p.max_dim, "eigendecomposition")?;
    guard(h.dim(), p.full_spectrum_limit, "full eigendecomposition")?;
    let dim = h.dim();
    if dim == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::from_element(0, 0, ZERO),
        });
    }
    let eig = SymmetricEigen::new(h.to_dense());
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let eigenvectors = eig.eigenvectors.select_columns(&order);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Ground energy and spectral gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapInfo {
    pub ground_energy: f64,
    /// Distance to the next distinct level. For a flat spectrum this holds the
    /// full-range sentinel `1.0` (the width of the unit energy window).
    pub gap: f64,
    pub flat: bool,
}

/// Ground energy and gap, using dense diagonalization up to the dense limit
/// and Lanczos iteration above it.
pub fn spectral_gap(h: &HermitianOperator) -> Result<GapInfo> {
    gap_with_policy(h, &policy())
}

fn gap_with_policy(h: &HermitianOperator, p: &NumericPolicy) -> Result<GapInfo> {
    guard(h.dim(), p.max_dim, "spectral gap")?;
    let levels = levels_with_policy(h, 2, p)?;
    Ok(match levels.as_slice() {
        [] => return Err(Error::validation("empty operator has no spectrum")),
        [(g, _)] => GapInfo {
            ground_energy: *g,
            gap: 1.0,
            flat: true,
        },
        [(g, _), (e1, _), ..] => GapInfo {
            ground_energy: *g,
            gap: e1 - g,
            flat: false,
        },
    })
}

/// The `count` lowest distinct levels. Multiplicities are exact on the dense
/// path; the Lanczos path reports multiplicity 1.
pub fn lowest_levels(h: &HermitianOperator, count: usize) -> Result<Vec<(f64, usize)>> {
    levels_with_policy(h, count, &policy())
}

fn levels_with_policy(
    h: &HermitianOperator,
    count: usize,
    p: &NumericPolicy,
) -> Result<Vec<(f64, usize)>> {
    guard(h.dim(), p.max_dim, "extremal eigensolver")?;
    if h.dim() <= p.dense_limit {
        let spec = eigendecompose(h)?;
        let mut lv = spec.levels(p.degeneracy_tol);
        lv.truncate(count);
        return Ok(lv);
    }
    let ritz = lanczos_lowest(h, count, p.degeneracy_tol)?;
    Ok(ritz.into_iter().map(|v| (v, 1)).collect())
}

const LANCZOS_SEED: u64 = 0x1a2c_2057;
const LANCZOS_BLOCK: usize = 20;
const LANCZOS_RESIDUAL: f64 = 1e-10;

/// Lanczos with full reorthogonalization; returns the `count` lowest distinct
/// Ritz values once their residuals converge.
fn lanczos_lowest(h: &HermitianOperator, count: usize, tol: f64) -> Result<Vec<f64>> {
    let dim = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
    let mut v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    normalize(&mut v);

    let mut basis: Vec<Vec<C64>> = vec![v];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    loop {
        let j = basis.len() - 1;
        let mut w = h.apply(&basis[j]);
        let a = dotc(&basis[j], &w).re;
        alpha.push(a);
        axpy(&mut w, -C64::new(a, 0.0), &basis[j]);
        if j > 0 {
            axpy(&mut w, -C64::new(beta[j - 1], 0.0), &basis[j - 1]);
        }
        for _ in 0..2 {
            for q in &basis {
                let c = dotc(q, &w);
                axpy(&mut w, -c, q);
            }
        }
        let b = norm(&w);
        let exhausted = b < 1e-12 || basis.len() == dim;

        if exhausted || alpha.len().is_multiple_of(LANCZOS_BLOCK) {
            let m = alpha.len();
            let mut t = DMatrix::<f64>::zeros(m, m);
            for i in 0..m {
                t[(i, i)] = alpha[i];
                if i + 1 < m {
                    t[(i, i + 1)] = beta[i];
                    t[(i + 1, i)] = beta[i];
                }
            }
            let eig = SymmetricEigen::new(t);
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
            let mut values = Vec::new();
            let mut converged = true;
            let mut anchor = f64::NEG_INFINITY;
            for &k in &order {
                let val = eig.eigenvalues[k];
                if val - anchor <= tol {
                    continue;
                }
                anchor = val;
                let resid = (b * eig.eigenvectors[(m - 1, k)]).abs();
                if !exhausted && resid > LANCZOS_RESIDUAL {
                    converged = false;
                }
                values.push(val);
                if values.len() == count {
                    break;
                }
            }
            if exhausted || (converged && values.len() == count) {
                return Ok(values);
            }
        }
        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(w);
    }
}

fn dotc(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn axpy(y: &mut [C64], a: C64, x: &[C64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += a * xi);
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(a: &mut [C64]) {
    let n = norm(a);
    a.iter_mut().for_each(|x| *x /= n);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
        let m = DMatrix::from_fn(dim, dim, |_, _| {
            C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        m.qr().q()
    }

    #[test]
    fn pauli_z_and_zero() {
        let z = HermitianOperator::diagonal(&[1.0, -1.0]);
        let s = eigendecompose(&z).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 1.0]);
        let zero = HermitianOperator::zero(4);
        assert_eq!(eigendecompose(&zero).unwrap().eigenvalues, vec![0.0; 4]);
    }

    #[test]
    fn path_laplacian_over_two() {
        // three-vertex path: Laplacian eigenvalues 0, 1, 3
        let h = HermitianOperator::from_dense(DMatrix::from_row_slice(
            3,
            3,
            &[0.5, -0.5, 0.0, -0.5, 1.0, -0.5, 0.0, -0.5, 0.5].map(|x| C64::new(x, 0.0)),
        ))
        .unwrap();
        let s = eigendecompose(&h).unwrap();
        for (a, b) in s.eigenvalues.iter().zip([0.0, 0.5, 1.5]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugated_diagonal_recovers_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let u = random_unitary(8, &mut rng);
            let mut d: Vec<f64> = (0..8).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
            let dm = DMatrix::from_diagonal(&DVector::from_iterator(
                8,
                d.iter().map(|x| C64::new(*x, 0.0)),
            ));
            let h = HermitianOperator::from_dense(u.adjoint() * dm * &u).unwrap();
            let s = eigendecompose(&h).unwrap();
            d.sort_by(f64::total_cmp);
            for (a, b) in s.eigenvalues.iter().zip(&d) {
                assert!((a - b).abs() < 1e-10);
            }
            assert!(s.reconstruction_error(&h) < 1e-10);
            assert!(s.orthonormality_error() < 1e-10);
        }
    }

    #[test]
    fn guard_rejects_oversized() {
        let big = HermitianOperator::zero((1 << 12) + 1);
        assert!(matches!(eigendecompose(&big), Err(Error::Resource { .. })));
    }

    #[test]
    fn flat_spectrum_sentinel() {
        let g = spectral_gap(&HermitianOperator::zero(3)).unwrap();
        assert!(g.flat);
        assert_eq!(g.gap, 1.0);
        let z = spectral_gap(&HermitianOperator::diagonal(&[1.0, -1.0])).unwrap();
        assert_eq!((z.ground_energy, z.gap, z.flat), (-1.0, 2.0, false));
    }

    #[test]
    fn lanczos_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dim = 40;
        let u = random_unitary(dim, &mut rng);
        let mut d: Vec<f64> = (0..dim).map(|k| (k / 3) as f64 * 0.1).collect();
        d[5] = -0.7;
        let dm = DMatrix::from_diagonal(&DVector::from_iterator(
            dim,
            d.iter().map(|x| C64::new(*x, 0.0)),
        ));
        let h = HermitianOperator::from_dense(u.adjoint() * dm * &u).unwrap();
        let dense = lowest_levels(&h, 3).unwrap();
        let ritz = lanczos_lowest(&h, 3, 1e-9).unwrap();
        assert_eq!(dense.len(), 3);
        for ((a, _), b) in dense.iter().zip(&ritz) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }

        // force the iterative path through a tiny dense limit
        let p = NumericPolicy {
            dense_limit: 8,
            ..NumericPolicy::DEFAULT
        };
        let gap = gap_with_policy(&h, &p).unwrap();
        assert!((gap.ground_energy + 0.7).abs() < 1e-9);
        assert!((gap.gap - 0.7).abs() < 1e-9);
    }
}
