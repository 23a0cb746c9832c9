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

//! Energy-measurement outcome distributions on a uniform grid, the
//! super-resolution sampler for diagonalizable Hamiltonians, noise injection,
//! and the resolution-contract checker.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::output_distribution;
use crate::diag::DiagonalizableHamiltonian;
use crate::error::{Error, Result};
use crate::linalg::{
    eigendecompose, l1_distance, DiscreteDistribution, HermitianOperator, StateVector,
};
use crate::policy::policy;
use crate::rng;

/// Eigenvalues may leave `[0,1]` by this much before binning refuses them.
const SPECTRUM_TOL: f64 = 1e-9;
/// Slack on the grid-window edges and on the contract margin.
const CONTRACT_TOL: f64 = 1e-12;
/// Shots per independent random stream.
const SHOT_CHUNK: usize = 1 << 14;

/// The outcome set `{0, δ, 2δ, …, 1}` with `δ = 1/K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyGrid {
    k: u64,
}

impl EnergyGrid {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 || k > 1 << 40 {
            return Err(Error::validation(format!(
                "grid: K = {k} must be in 1..=2^40"
            )));
        }
        Ok(Self { k })
    }

    /// `K = 2^l`.
    pub fn dyadic(l: u32) -> Result<Self> {
        if l > 40 {
            return Err(Error::validation(format!("digits: {l} exceeds 40")));
        }
        Self::new(1u64 << l)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Number of grid points, `K + 1`.
    pub fn len(&self) -> usize {
        self.k as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `δ = 1/K`, exactly.
    pub fn delta(&self) -> Ratio<u64> {
        Ratio::new(1, self.k)
    }

    pub fn delta_f64(&self) -> f64 {
        1.0 / self.k as f64
    }

    /// `E_m = m/K`.
    pub fn energy(&self, m: usize) -> f64 {
        m as f64 / self.k as f64
    }

    /// Nearest grid point, ties toward the lower one; values outside `[0,1]`
    /// fold onto the end points.
    pub fn nearest_bin(&self, lambda: f64) -> usize {
        let m = (lambda * self.k as f64 - 0.5).ceil();
        m.clamp(0.0, self.k as f64) as usize
    }

    /// `⌊λK⌋`, the bin of the `log2 K`-digit truncation of `λ`.
    pub fn truncated_bin(&self, lambda: f64) -> usize {
        (lambda * self.k as f64).floor().clamp(0.0, self.k as f64) as usize
    }
}

/// Resolution `δ`, confidence `η = 1 − ε`, sampling error `β` and seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerParams {
    pub delta: f64,
    pub eta: f64,
    pub beta: f64,
    pub seed: u64,
}

impl SamplerParams {
    pub fn new(delta: f64, eta: f64, beta: f64, seed: u64) -> Result<Self> {
        let p = Self {
            delta,
            eta,
            beta,
            seed,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::validation(format!(
                "delta: {} not in (0,1]",
                self.delta
            )));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::validation(format!("eta: {} not in [0,1]", self.eta)));
        }
        if !(self.beta >= 0.0 && self.beta <= 2.0) {
            return Err(Error::validation(format!(
                "beta: {} not in [0,2]",
                self.beta
            )));
        }
        Ok(())
    }

    pub fn epsilon(&self) -> f64 {
        1.0 - self.eta
    }
}

/// Outcome probabilities `q_m` over an energy grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyDistribution {
    pub grid: EnergyGrid,
    pub q: DiscreteDistribution,
}

impl EnergyDistribution {
    pub fn new(grid: EnergyGrid, q: DiscreteDistribution) -> Result<Self> {
        if q.len() != grid.len() {
            return Err(Error::validation(format!(
                "distribution has {} entries for a grid of {} points",
                q.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, q })
    }

    /// Bin `(energy, mass)` pairs to their nearest grid points.
    pub fn from_levels(grid: EnergyGrid, levels: &[(f64, f64)]) -> Result<Self> {
        check_unit_range(levels.iter().map(|l| l.0))?;
        let mut q = vec![0.0; grid.len()];
        for &(e, w) in levels {
            q[grid.nearest_bin(e)] += w;
        }
        Self::new(grid, renormalized(q)?)
    }

    pub fn probs(&self) -> &[f64] {
        self.q.probs()
    }

    pub fn l1(&self, other: &EnergyDistribution) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::validation(
                "energy distributions use different grids",
            ));
        }
        l1_distance(&self.q, &other.q)
    }

    /// `(1 − ε)·self + ε·(point mass at bin)`: an `ε`-failing sampler that
    /// dumps its failures on one outcome.
    pub fn with_failures(&self, eps: f64, bin: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::validation(format!("epsilon: {eps} not in [0,1]")));
        }
        let point = DiscreteDistribution::point(self.grid.len(), bin)?;
        Self::new(self.grid, self.q.mix(&point, eps)?)
    }
}

/// Tolerate summation drift up to `1e-10` by renormalizing.
pub(crate) fn renormalized(mut p: Vec<f64>) -> Result<DiscreteDistribution> {
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() <= 1e-10 && total > 0.0 {
        p.iter_mut().for_each(|x| *x /= total);
    }
    DiscreteDistribution::new(p)
}

fn check_unit_range(values: impl Iterator<Item = f64>) -> Result<()> {
    for v in values {
        if !(-SPECTRUM_TOL..=1.0 + SPECTRUM_TOL).contains(&v) {
            return Err(Error::validation(format!(
                "eigenvalue {v} lies outside [0,1]; apply rescale_to_unit first"
            )));
        }
    }
    Ok(())
}

/// Distinct eigenvalues of `h` with the state's weight on each eigenspace.
pub fn spectral_masses(h: &HermitianOperator, state: &StateVector) -> Result<Vec<(f64, f64)>> {
    if h.dim() != state.dim() {
        return Err(Error::validation(format!(
            "operator dimension {} does not match state dimension {}",
            h.dim(),
            state.dim()
        )));
    }
    let spec = eigendecompose(h)?;
    let weights = spec.weights(state.amplitudes());
    let tol = policy().degeneracy_tol;
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut anchor = f64::NEG_INFINITY;
    for (&l, w) in spec.eigenvalues.iter().zip(weights) {
        match out.last_mut() {
            Some(last) if l - anchor <= tol => last.1 += w,
            _ => {
                anchor = l;
                out.push((l, w));
            }
        }
    }
    Ok(out)
}

/// Distinct values of `f` with `Σ P_z` on each, where `P_z = |⟨z|U|ψ⟩|²`.
pub fn diagonal_spectral_masses(
    h: &DiagonalizableHamiltonian,
    state: &StateVector,
) -> Result<Vec<(f64, f64)>> {
    let p = output_distribution(h.diagonalizer(), state)?;
    let mut pairs: Vec<(f64, f64)> = h.eigen().values().into_iter().zip(p.into_vec()).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (f, w) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == f => last.1 += w,
            _ => out.push((f, w)),
        }
    }
    Ok(out)
}

/// Ideal binned energy measurement of `state` under `h`, by full
/// eigendecomposition. Satisfies the resolution contract with `η = 1`.
pub fn exact_energy_distribution(
    h: &HermitianOperator,
    state: &StateVector,
    grid: EnergyGrid,
) -> Result<EnergyDistribution> {
    EnergyDistribution::from_levels(grid, &spectral_masses(h, state)?)
}

/// The same ideal distribution computed in the eigenbasis of a
/// diagonalizable Hamiltonian, without any eigensolver.
pub fn diagonal_energy_distribution(
    h: &DiagonalizableHamiltonian,
    state: &StateVector,
    grid: EnergyGrid,
) -> Result<EnergyDistribution> {
    EnergyDistribution::from_levels(grid, &diagonal_spectral_masses(h, state)?)
}

/// Distribution emitted by the super-resolution sampler: draw `z` from a
/// `β`-perturbed `P_z`, output the `l`-digit truncation of `f(z)`.
///
/// With `beta = 0` this is the ideal `(η = 1, δ = 2^{−l})` distribution.
pub fn theorem1_distribution(
    h: &DiagonalizableHamiltonian,
    state: &StateVector,
    digits: u32,
    beta: f64,
    seed: u64,
) -> Result<EnergyDistribution> {
    let grid = EnergyGrid::dyadic(digits)?;
    let p = perturb_distribution(&output_distribution(h.diagonalizer(), state)?, beta, seed)?;
    let mut q = vec![0.0; grid.len()];
    for (f, w) in h.eigen().values().into_iter().zip(p.probs()) {
        q[grid.truncated_bin(f)] += w;
    }
    EnergyDistribution::new(grid, renormalized(q)?)
}

/// Outcome counts over an energy grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub grid: EnergyGrid,
    pub counts: Vec<u64>,
    pub shots: u64,
}

impl Histogram {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.shots.max(1) as f64)
            .collect()
    }

    /// `Σ_m |count_m/shots − q_m|`.
    pub fn l1_to(&self, dist: &EnergyDistribution) -> f64 {
        self.frequencies()
            .iter()
            .zip(dist.probs())
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

/// Draw `shots` outcomes from a distribution, in parallel chunks with one
/// random stream per chunk (so the result is independent of thread count).
pub fn sample_counts(dist: &DiscreteDistribution, shots: u64, seed: u64) -> Vec<u64> {
    let cdf: Vec<f64> = dist
        .probs()
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let last = dist.probs().iter().rposition(|&p| p > 0.0).unwrap_or(0);
    let chunks = (shots as usize).div_ceil(SHOT_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = rng::stream(seed, c as u64);
            let n = SHOT_CHUNK.min(shots as usize - c * SHOT_CHUNK);
            let mut counts = vec![0u64; cdf.len()];
            for _ in 0..n {
                let u: f64 = r.random();
                let i = cdf.partition_point(|&c| c <= u).min(last);
                counts[i] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; cdf.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Shot-based super-resolution sampling; `params.beta` is injected as a
/// perturbation of the circuit output distribution.
pub fn sample_theorem1(
    h: &DiagonalizableHamiltonian,
    state: &StateVector,
    digits: u32,
    params: &SamplerParams,
    shots: u64,
) -> Result<Histogram> {
    params.validate()?;
    let grid = EnergyGrid::dyadic(digits)?;
    let p = perturb_distribution(
        &output_distribution(h.diagonalizer(), state)?,
        params.beta,
        params.seed,
    )?;
    let z_counts = sample_counts(&p, shots, params.seed.wrapping_add(1));
    let mut counts = vec![0u64; grid.len()];
    for (f, c) in h.eigen().values().into_iter().zip(z_counts) {
        counts[grid.truncated_bin(f)] += c;
    }
    Ok(Histogram {
        grid,
        counts,
        shots,
    })
}

/// Move `β/2` of probability mass so that `Σ|p − q| = β`.
///
/// A random acceptor with room for the mass is chosen first; mass is then
/// taken from the other supported entries in random order and spread over the
/// acceptor plus a random subset of untouched entries.
pub fn perturb_distribution(
    p: &DiscreteDistribution,
    beta: f64,
    seed: u64,
) -> Result<DiscreteDistribution> {
    if !(0.0..=2.0).contains(&beta) {
        return Err(Error::validation(format!("beta: {beta} not in [0,2]")));
    }
    if beta == 0.0 {
        return Ok(p.clone());
    }
    let mass = beta / 2.0;
    let probs = p.probs();
    let mut r = rng::rng(seed);
    let acceptors: Vec<usize> = (0..probs.len())
        .filter(|&i| probs[i] <= 1.0 - mass)
        .collect();
    let Some(&a) = acceptors.get(r.random_range(0..acceptors.len().max(1))) else {
        return Err(Error::validation(format!(
            "beta: {beta} exceeds the movable mass of the distribution"
        )));
    };
    let mut donors: Vec<usize> = (0..probs.len())
        .filter(|&i| i != a && probs[i] > 0.0)
        .collect();
    donors.shuffle(&mut r);
    let mut q = probs.to_vec();
    let mut touched = vec![false; q.len()];
    touched[a] = true;
    let mut remaining = mass;
    for d in donors {
        if remaining <= 0.0 {
            break;
        }
        let take = q[d].min(remaining);
        q[d] -= take;
        remaining -= take;
        touched[d] = true;
    }
    if remaining > 0.0 {
        return Err(Error::validation(format!(
            "beta: {beta} exceeds the movable mass of the distribution"
        )));
    }
    let mut receivers = vec![a];
    receivers.extend((0..q.len()).filter(|&i| !touched[i] && r.random_bool(0.5)));
    let shares: Vec<f64> = receivers.iter().map(|_| r.random_range(0.5..1.0)).collect();
    let total: f64 = shares.iter().sum();
    for (&i, s) in receivers.iter().zip(shares) {
        q[i] += mass * s / total;
    }
    DiscreteDistribution::new(q)
}

/// Take `amount` of mass from `donors` (in order, each down to zero) and put
/// it on `to`.
pub fn move_mass(
    p: &DiscreteDistribution,
    donors: &[usize],
    to: usize,
    amount: f64,
) -> Result<DiscreteDistribution> {
    let mut q = p.probs().to_vec();
    if to >= q.len() {
        return Err(Error::validation(format!("bin {to} outside support")));
    }
    let mut remaining = amount;
    for &d in donors.iter().filter(|&&d| d != to) {
        if remaining <= 0.0 {
            break;
        }
        let take = q[d].min(remaining);
        q[d] -= take;
        remaining -= take;
    }
    if remaining > CONTRACT_TOL {
        return Err(Error::validation(format!(
            "cannot move {amount}: donors hold too little mass"
        )));
    }
    q[to] += amount - remaining.max(0.0);
    DiscreteDistribution::new(q)
}

/// Worst case of `Pr(E ∈ [E_A − δ, E_B + δ]) − η·tr(Π_{[E_A,E_B]} ρ)` over
/// all intervals with eigenvalue end points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractReport {
    pub delta: f64,
    pub eta: f64,
    pub intervals: usize,
    pub worst_margin: f64,
    pub worst_interval: [f64; 2],
    pub pass: bool,
}

/// Check the resolution contract against the full spectrum of `h`.
pub fn check_resolution_contract(
    dist: &EnergyDistribution,
    h: &HermitianOperator,
    state: &StateVector,
    delta: f64,
    eta: f64,
) -> Result<ContractReport> {
    check_contract_levels(dist, &spectral_masses(h, state)?, delta, eta)
}

/// Check the resolution contract against `(eigenvalue, mass)` levels sorted
/// ascending. The left side is piecewise constant between eigenvalues, so
/// intervals with eigenvalue end points are exhaustive.
pub fn check_contract_levels(
    dist: &EnergyDistribution,
    levels: &[(f64, f64)],
    delta: f64,
    eta: f64,
) -> Result<ContractReport> {
    if !(delta > 0.0) || !(0.0..=1.0).contains(&eta) {
        return Err(Error::validation(format!(
            "contract: need delta > 0 and eta in [0,1], got {delta}, {eta}"
        )));
    }
    if levels.windows(2).any(|w| w[0].0 > w[1].0) {
        return Err(Error::validation("contract: levels must be sorted"));
    }
    let grid = dist.grid;
    let k = grid.k() as f64;
    let mut prefix = vec![0.0; grid.len() + 1];
    for (m, q) in dist.probs().iter().enumerate() {
        prefix[m + 1] = prefix[m] + q;
    }
    let window = |lo: f64, hi: f64| -> f64 {
        let a = ((lo - CONTRACT_TOL) * k).ceil().max(0.0);
        let b = ((hi + CONTRACT_TOL) * k).floor().min(k);
        if a > b {
            0.0
        } else {
            prefix[b as usize + 1] - prefix[a as usize]
        }
    };
    let mut report = ContractReport {
        delta,
        eta,
        intervals: 0,
        worst_margin: f64::INFINITY,
        worst_interval: [0.0, 0.0],
        pass: true,
    };
    for i in 0..levels.len() {
        let mut mass = 0.0;
        for j in i..levels.len() {
            mass += levels[j].1;
            let margin = window(levels[i].0 - delta, levels[j].0 + delta) - eta * mass;
            report.intervals += 1;
            if margin < report.worst_margin {
                report.worst_margin = margin;
                report.worst_interval = [levels[i].0, levels[j].0];
            }
        }
    }
    report.pass = report.worst_margin >= -CONTRACT_TOL;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::{build_h2d_preset, WeightPreset};
    use crate::iqp::{build_input_state, LatticeSpec, ProductInput};
    use crate::pauli::{PauliSum, PauliTerm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h2d_u() -> DiagonalizableHamiltonian {
        build_h2d_preset(&LatticeSpec::new(2, 2).unwrap(), WeightPreset::U).unwrap()
    }

    fn psi00() -> StateVector {
        build_input_state(&ProductInput::new(vec![0.0; 4], vec![0; 4]).unwrap()).unwrap()
    }

    #[test]
    fn grid_binning() {
        let g = EnergyGrid::new(4).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.delta(), Ratio::new(1, 4));
        assert_eq!(g.nearest_bin(0.125), 0);
        assert_eq!(g.nearest_bin(0.13), 1);
        assert_eq!(g.nearest_bin(-0.01), 0);
        assert_eq!(g.nearest_bin(1.2), 4);
        assert_eq!(g.truncated_bin(0.49), 1);
        assert!(EnergyGrid::new(0).is_err());
    }

    #[test]
    fn exact_distribution_examples() {
        let zero = HermitianOperator::zero(4);
        let d = exact_energy_distribution(
            &zero,
            &StateVector::basis(2, 3).unwrap(),
            EnergyGrid::new(4).unwrap(),
        )
        .unwrap();
        assert_eq!(d.probs()[0], 1.0);

        let h = h2d_u();
        let op = h.operator().unwrap();
        let u = h.diagonalizer().unitary().unwrap();
        let grid = EnergyGrid::new(16).unwrap();
        // Eigenstate U†|z⟩ puts unit mass at z/16.
        let z = 11;
        let eig = StateVector::new(4, u.row(z).adjoint().iter().copied().collect()).unwrap();
        let d = exact_energy_distribution(&op, &eig, grid).unwrap();
        assert!((d.probs()[z] - 1.0).abs() < 1e-12);

        let d = exact_energy_distribution(&op, &psi00(), grid).unwrap();
        let p = output_distribution(h.diagonalizer(), &psi00()).unwrap();
        for z in 0..16 {
            assert!((d.probs()[z] - p.get(z)).abs() < 1e-12);
        }
        let diag = diagonal_energy_distribution(&h, &psi00(), grid).unwrap();
        assert!(d.l1(&diag).unwrap() < 1e-12);

        let big = PauliSum::from_terms(
            1,
            &[PauliTerm {
                coeff: 2.0,
                string: "Z".into(),
            }],
        )
        .unwrap();
        assert!(exact_energy_distribution(
            &big.to_operator().unwrap(),
            &StateVector::zero(1),
            grid
        )
        .is_err());
    }

    #[test]
    fn perturbation_examples() {
        let p = DiscreteDistribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(perturb_distribution(&p, 0.0, 1).unwrap(), p);
        let q = perturb_distribution(&p, 0.2, 1).unwrap();
        assert!((q.get(0) - 0.9).abs() < 1e-15 && (q.get(1) - 0.1).abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for seed in 0..50 {
            let w: Vec<f64> = (0..10).map(|_| rng.random::<f64>()).collect();
            let p = DiscreteDistribution::from_weights(w).unwrap();
            let q = perturb_distribution(&p, 0.1, seed).unwrap();
            assert!((l1_distance(&p, &q).unwrap() - 0.1).abs() < 1e-12);
        }
        let one = DiscreteDistribution::new(vec![1.0]).unwrap();
        assert!(perturb_distribution(&one, 0.1, 0).is_err());
        assert!(perturb_distribution(&p, 2.5, 0).is_err());
    }

    #[test]
    fn theorem1_distributional() {
        let h = h2d_u();
        let ideal = theorem1_distribution(&h, &psi00(), 4, 0.0, 0).unwrap();
        let exact = exact_energy_distribution(
            &h.operator().unwrap(),
            &psi00(),
            EnergyGrid::dyadic(4).unwrap(),
        )
        .unwrap();
        assert!(ideal.l1(&exact).unwrap() < 1e-12);
        for beta in [0.01, 0.05] {
            let noisy = theorem1_distribution(&h, &psi00(), 5, beta, 3).unwrap();
            let base = theorem1_distribution(&h, &psi00(), 5, 0.0, 3).unwrap();
            assert!((noisy.l1(&base).unwrap() - beta).abs() < 1e-12);
        }
    }

    #[test]
    fn shot_sampler_converges() {
        let h = h2d_u();
        let params = SamplerParams::new(1.0 / 16.0, 1.0, 0.0, 42).unwrap();
        let hist = sample_theorem1(&h, &psi00(), 4, &params, 100_000).unwrap();
        let exact = theorem1_distribution(&h, &psi00(), 4, 0.0, 0).unwrap();
        assert!(hist.l1_to(&exact) <= 0.02);
        let again = sample_theorem1(&h, &psi00(), 4, &params, 100_000).unwrap();
        assert_eq!(hist, again);

        let noisy = SamplerParams {
            beta: 0.05,
            ..params
        };
        let hist = sample_theorem1(&h, &psi00(), 4, &noisy, 100_000).unwrap();
        assert!(hist.l1_to(&exact) <= 0.05 + 0.02);
    }

    #[test]
    fn zero_function_always_emits_zero() {
        let c = crate::circuit::CircuitIR::random(2, 5, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let h = DiagonalizableHamiltonian::new(
            c,
            crate::diag::EigenFunction::new(vec![0.0, 0.0]).unwrap(),
        )
        .unwrap();
        let params = SamplerParams::new(0.25, 1.0, 0.0, 1).unwrap();
        let hist = sample_theorem1(&h, &StateVector::zero(2), 2, &params, 1000).unwrap();
        assert_eq!(hist.counts[0], 1000);
    }

    #[test]
    fn contract_checks() {
        let h = h2d_u();
        let op = h.operator().unwrap();
        let grid = EnergyGrid::new(16).unwrap();
        let exact = exact_energy_distribution(&op, &psi00(), grid).unwrap();
        let r = check_resolution_contract(&exact, &op, &psi00(), 1.0 / 16.0, 1.0).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.intervals, 16 * 17 / 2);

        // β = 0.3: move 0.15 from the lower half of the grid to the top point.
        let low: Vec<usize> = (0..=8).collect();
        let moved = move_mass(&exact.q, &low, 16, 0.15).unwrap();
        assert!((l1_distance(&exact.q, &moved).unwrap() - 0.3).abs() < 1e-12);
        let noisy = EnergyDistribution::new(grid, moved).unwrap();
        let r = check_resolution_contract(&noisy, &op, &psi00(), 1.0 / 16.0, 1.0).unwrap();
        assert!(!r.pass);

        // ε-failing sampler satisfies the contract at η = 1 − ε but not η = 1.
        let failing = exact.with_failures(0.2, 16).unwrap();
        assert!(
            check_resolution_contract(&failing, &op, &psi00(), 1.0 / 16.0, 0.8)
                .unwrap()
                .pass
        );
        assert!(
            !check_resolution_contract(&failing, &op, &psi00(), 1.0 / 16.0, 1.0)
                .unwrap()
                .pass
        );

        // Single eigenvalue: the contract reduces to Pr(|E − λ| ≤ δ) ≥ η.
        let flat = HermitianOperator::diagonal(&[0.5, 0.5]);
        let d =
            exact_energy_distribution(&flat, &StateVector::zero(1), EnergyGrid::new(4).unwrap())
                .unwrap();
        let r = check_resolution_contract(&d, &flat, &StateVector::zero(1), 0.25, 1.0).unwrap();
        assert!(r.pass && r.intervals == 1);
    }
}
