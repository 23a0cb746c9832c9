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

//! Classical reductions built on energy samplers: decoding lattice output
//! strings from super-resolved energies, ground-state probability bounds,
//! the marginal-probability estimator, and two diagnostics.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{marginal_probability, output_distribution, CircuitIR, MarginalSpec};
use crate::diag::{build_h2d_preset, WeightPreset};
use crate::energy::{
    check_contract_levels, diagonal_spectral_masses, exact_energy_distribution, move_mass,
    perturb_distribution, sample_counts, spectral_masses, EnergyDistribution, EnergyGrid,
};
use crate::error::{Error, Result};
use crate::fk::FKOperator;
use crate::iqp::{build_input_state, build_u2d, LatticeSpec, ProductInput};
use crate::linalg::{l1_distance, DiscreteDistribution, HermitianOperator, StateVector};
use crate::policy::policy;
use crate::rng;

/// Slack on exact distributional comparisons.
pub const DIST_TOL: f64 = 1e-12;

/// A measured quantity against its theoretical bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub label: String,
    pub measured: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ReductionReport {
    fn new(label: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            bound,
            tolerance,
            pass: measured <= bound + tolerance,
            shots: None,
            seed: None,
        }
    }
}

/// How an `(ε, β)` sampler deviates from the ideal one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    /// No deviation.
    Ideal,
    /// Failures land on a random outcome; `β` is spread by
    /// [`perturb_distribution`].
    #[default]
    Random,
    /// Worst case for the bound under test: for string decoding all error
    /// mass goes to the least likely string; for ground-state estimates mass
    /// leaves the ground window.
    Saturating,
    /// Ground-state estimates only: mass enters the ground window.
    Inward,
}

// ------------------------------------------------------- string decoding

/// Grid `K = 3·2^n`, i.e. `δ = 2^{−n}/3`.
pub fn algorithm1_grid(n: usize) -> Result<EnergyGrid> {
    EnergyGrid::new(3u64 << n)
}

/// The unique `z` with `E_m ∈ {z/2^n − δ, z/2^n, z/2^n + δ}`, i.e.
/// `|m − 3z| ≤ 1`, in exact integer arithmetic. The top point `m = 3·2^n`
/// (outside every window) maps to the nearest string, `2^n − 1`.
pub fn algorithm1_decode(m: usize, n: usize) -> usize {
    ((m + 1) / 3).min((1usize << n) - 1)
}

/// Push an energy-outcome distribution through the decoder.
pub fn algorithm1_distribution(
    dist: &EnergyDistribution,
    n: usize,
) -> Result<DiscreteDistribution> {
    if dist.grid != algorithm1_grid(n)? {
        return Err(Error::validation(format!(
            "grid: expected K = 3·2^{n}, got K = {}",
            dist.grid.k()
        )));
    }
    let mut p = vec![0.0; 1 << n];
    for (m, q) in dist.probs().iter().enumerate() {
        p[algorithm1_decode(m, n)] += q;
    }
    DiscreteDistribution::new(p)
}

/// Draw energies from `dist` and decode each shot; returns counts per `z`.
pub fn algorithm1_sample(
    dist: &EnergyDistribution,
    n: usize,
    shots: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    algorithm1_distribution(dist, n)?;
    let mut z = vec![0u64; 1 << n];
    for (m, c) in sample_counts(&dist.q, shots, seed).into_iter().enumerate() {
        z[algorithm1_decode(m, n)] += c;
    }
    Ok(z)
}

/// Sampler distribution used by the string-decoding check, before and after
/// the `β` step.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisySampler {
    /// `(δ, η = 1 − ε)` sampler.
    pub failing: EnergyDistribution,
    /// `β`-perturbation of `failing`.
    pub output: EnergyDistribution,
}

fn thm2_sampler(
    ideal: &EnergyDistribution,
    exact: &DiscreteDistribution,
    eps: f64,
    beta: f64,
    noise: NoiseModel,
    seed: u64,
) -> Result<NoisySampler> {
    let grid = ideal.grid;
    let mut r = rng::rng(seed);
    let (target, failing) = match noise {
        NoiseModel::Ideal => (0, ideal.clone()),
        NoiseModel::Random => {
            let bin = r.random_range(0..grid.len());
            (bin, ideal.with_failures(eps, bin)?)
        }
        NoiseModel::Saturating | NoiseModel::Inward => {
            let z_min = (0..exact.len())
                .min_by(|&a, &b| exact.get(a).total_cmp(&exact.get(b)))
                .unwrap_or(0);
            (3 * z_min, ideal.with_failures(eps, 3 * z_min)?)
        }
    };
    let output = match noise {
        NoiseModel::Ideal => failing.q.clone(),
        NoiseModel::Random => perturb_distribution(&failing.q, beta, r.random())?,
        NoiseModel::Saturating | NoiseModel::Inward => {
            let mut donors: Vec<usize> = (0..grid.len()).filter(|&m| m != target).collect();
            donors.sort_by(|&a, &b| failing.q.get(b).total_cmp(&failing.q.get(a)));
            move_mass(&failing.q, &donors, target, beta / 2.0)?
        }
    };
    Ok(NoisySampler {
        output: EnergyDistribution::new(grid, output)?,
        failing,
    })
}

/// Full report of one string-decoding check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub rows: usize,
    pub cols: usize,
    pub eps: f64,
    pub beta: f64,
    pub noise: NoiseModel,
    /// `ℓ1(decoded, exact)` against `2ε + β`.
    pub l1: ReductionReport,
    /// `ℓ1` of the decoded `(δ, η)` sampler alone against `2ε`.
    pub failing_l1: ReductionReport,
    /// The failing sampler meets the resolution contract at `η = 1 − ε`.
    pub contract_ok: bool,
    /// `ℓ1(output, failing) ≤ β`.
    pub beta_ok: bool,
    pub pass: bool,
}

/// Decode strings from a noisy energy sampler for `H_2D[u]` and compare
/// with the exact `U_2D` output distribution, distributionally.
pub fn theorem2_check(
    lattice: &LatticeSpec,
    input: &ProductInput,
    eps: f64,
    beta: f64,
    noise: NoiseModel,
    seed: u64,
) -> Result<Theorem2Report> {
    if !(0.0..=1.0).contains(&eps) || !(0.0..=2.0).contains(&beta) {
        return Err(Error::validation(format!(
            "need eps in [0,1] and beta in [0,2], got {eps}, {beta}"
        )));
    }
    let n = lattice.num_qubits();
    let h = build_h2d_preset(lattice, WeightPreset::U)?;
    let state = build_input_state(input)?;
    let grid = algorithm1_grid(n)?;
    let levels = diagonal_spectral_masses(&h, &state)?;
    let ideal = EnergyDistribution::from_levels(grid, &levels)?;
    let exact = output_distribution(&build_u2d(lattice)?, &state)?;

    let sampler = thm2_sampler(&ideal, &exact, eps, beta, noise, seed)?;
    let contract = check_contract_levels(&sampler.failing, &levels, grid.delta_f64(), 1.0 - eps)?;
    let beta_ok = sampler.output.l1(&sampler.failing)? <= beta + DIST_TOL;

    let decoded = algorithm1_distribution(&sampler.output, n)?;
    let decoded_failing = algorithm1_distribution(&sampler.failing, n)?;
    let l1 = ReductionReport::new(
        "l1(alg1, exact)",
        l1_distance(&decoded, &exact)?,
        2.0 * eps + beta,
        DIST_TOL,
    );
    let failing_l1 = ReductionReport::new(
        "l1(alg1 on (delta,eta) sampler, exact)",
        l1_distance(&decoded_failing, &exact)?,
        2.0 * eps,
        DIST_TOL,
    );
    let pass = l1.pass && failing_l1.pass && contract.pass && beta_ok;
    Ok(Theorem2Report {
        rows: lattice.rows,
        cols: lattice.cols,
        eps,
        beta,
        noise,
        l1: ReductionReport {
            seed: Some(seed),
            ..l1
        },
        failing_l1,
        contract_ok: contract.pass,
        beta_ok,
        pass,
    })
}

// -------------------------------------------- ground-state probability

/// Grid with `δ = 1/⌈3/Δ⌉ ≤ Δ/3`.
pub fn lemma1_grid(gap: f64) -> Result<EnergyGrid> {
    if !(gap > 0.0 && gap <= 1.0) {
        return Err(Error::validation(format!("gap: {gap} must be in (0,1]")));
    }
    EnergyGrid::new((3.0 / gap).ceil() as u64)
}

/// Bins with energy in `[0, Δ/3]`.
pub fn ground_window(grid: EnergyGrid, gap: f64) -> Vec<usize> {
    (0..grid.len())
        .take_while(|&m| grid.energy(m) <= gap / 3.0 + DIST_TOL)
        .collect()
}

/// Move `frac` of the mass of every bin in `from` to bin `to`.
fn drain(
    p: &DiscreteDistribution,
    from: &[usize],
    to: usize,
    frac: f64,
) -> Result<DiscreteDistribution> {
    let mut q = p.probs().to_vec();
    let mut moved = 0.0;
    for &m in from.iter().filter(|&&m| m != to) {
        let d = q[m] * frac;
        q[m] -= d;
        moved += d;
    }
    q[to] += moved;
    DiscreteDistribution::new(q)
}

/// An `(ε, β)` sampler around `ideal` for ground-state estimates. The `ε`
/// step scales failures proportionally, so the resolution contract holds at
/// `η = 1 − ε`; the `β` step moves up to `β/2` of further mass.
pub fn lemma1_sampler(
    ideal: &EnergyDistribution,
    gap: f64,
    eps: f64,
    beta: f64,
    noise: NoiseModel,
    seed: u64,
) -> Result<NoisySampler> {
    let grid = ideal.grid;
    let window = ground_window(grid, gap);
    let outside: Vec<usize> = (window.len()..grid.len()).collect();
    let top = grid.len() - 1;
    let (failing, output) = match noise {
        NoiseModel::Ideal => (ideal.q.clone(), ideal.q.clone()),
        NoiseModel::Random => {
            let mut r = rng::rng(seed);
            let f = ideal.with_failures(eps, r.random_range(0..grid.len()))?.q;
            let movable = 1.0 - f.probs().iter().fold(0.0f64, |a, &b| a.max(b));
            let b = beta.min(movable);
            let o = perturb_distribution(&f, b, r.random())?;
            (f, o)
        }
        NoiseModel::Saturating => {
            let f = drain(&ideal.q, &window, top, eps)?;
            let avail: f64 = window.iter().map(|&m| f.get(m)).sum();
            let o = move_mass(&f, &window, top, (beta / 2.0).min(avail))?;
            (f, o)
        }
        NoiseModel::Inward => {
            let f = drain(&ideal.q, &outside, 0, eps)?;
            let avail: f64 = outside.iter().map(|&m| f.get(m)).sum();
            let o = move_mass(&f, &outside, 0, (beta / 2.0).min(avail))?;
            (f, o)
        }
    };
    Ok(NoisySampler {
        failing: EnergyDistribution::new(grid, failing)?,
        output: EnergyDistribution::new(grid, output)?,
    })
}

/// Ground-state probability bounds for one sampler distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub gap: f64,
    pub eps: f64,
    pub beta: f64,
    pub p_gs: f64,
    /// Mass of the sampler output in `[0, Δ/3]`.
    pub q_gs: f64,
    pub deviation: f64,
    pub bound: f64,
    pub pass: bool,
}

/// `|q′_GS − P_GS| ≤ ε + β` for `dist` against `h` (ground energy 0) on
/// `state`.
pub fn lemma1_bounds(
    dist: &EnergyDistribution,
    h: &HermitianOperator,
    state: &StateVector,
    eps: f64,
    beta: f64,
) -> Result<Lemma1Report> {
    let levels = spectral_masses(h, state)?;
    lemma1_from_levels(dist, &levels, eps, beta)
}

/// As [`lemma1_bounds`], from precomputed `(eigenvalue, mass)` levels.
pub fn lemma1_from_levels(
    dist: &EnergyDistribution,
    levels: &[(f64, f64)],
    eps: f64,
    beta: f64,
) -> Result<Lemma1Report> {
    let (gap, p_gs) = ground_and_gap(levels)?;
    let q_gs: f64 = ground_window(dist.grid, gap)
        .iter()
        .map(|&m| dist.q.get(m))
        .sum();
    let deviation = (q_gs - p_gs).abs();
    Ok(Lemma1Report {
        gap,
        eps,
        beta,
        p_gs,
        q_gs,
        deviation,
        bound: eps + beta,
        pass: deviation <= eps + beta + DIST_TOL,
    })
}

fn ground_and_gap(levels: &[(f64, f64)]) -> Result<(f64, f64)> {
    match levels {
        [] => Err(Error::validation("empty spectrum")),
        [(g, _)] | [(g, _), ..] if g.abs() > 1e-10 => {
            Err(Error::validation(format!("ground energy {g} is not 0")))
        }
        [_] => Err(Error::validation(
            "gapless Hamiltonian: a single level has no gap",
        )),
        [(g, p), (e1, _), ..] => Ok((e1 - g, *p)),
    }
}

/// One FK instance prepared for ground-state estimates: `H/κ` on the
/// physical sector, its gap, the readout state and its ideal distribution.
#[derive(Debug, Clone)]
pub struct GroundStateInstance {
    pub levels: Vec<(f64, f64)>,
    pub gap: f64,
    pub ideal: EnergyDistribution,
    pub p_gs: f64,
}

impl GroundStateInstance {
    pub fn new(fk: &FKOperator, x: usize) -> Result<Self> {
        let phys = fk.physical_indices();
        let h = fk.scaled()?.restrict(&phys)?;
        let readout = fk.readout_state(x)?;
        let amps = phys.iter().map(|&i| readout.amplitude(i)).collect();
        let dim_qubits = phys.len().next_power_of_two().trailing_zeros() as usize;
        // The physical sector is not a power of two; embed it padded with
        // inert zero-weight states so the spectrum helpers can be reused.
        let (h, state) = pad_to_power_of_two(&h, amps, dim_qubits)?;
        let levels = spectral_masses(&h, &state)?;
        let levels = drop_padding(levels, phys.len(), h.dim());
        let (gap, p_gs) = ground_and_gap(&levels)?;
        let ideal = EnergyDistribution::from_levels(lemma1_grid(gap)?, &levels)?;
        Ok(Self {
            levels,
            gap,
            ideal,
            p_gs,
        })
    }
}

/// Extend `h` by a block `1·I` (energy above every physical level after
/// scaling) so that the dimension is `2^q`.
fn pad_to_power_of_two(
    h: &HermitianOperator,
    amps: Vec<crate::linalg::C64>,
    q: usize,
) -> Result<(HermitianOperator, StateVector)> {
    let dim = 1usize << q;
    let mut trip: Vec<_> = (0..h.dim())
        .flat_map(|r| (0..h.dim()).map(move |c| (r, c)))
        .map(|(r, c)| (r, c, h.entry(r, c)))
        .filter(|t| t.2.norm() > 0.0)
        .collect();
    trip.extend((h.dim()..dim).map(|i| (i, i, crate::linalg::C64::new(1.0, 0.0))));
    let mut a = amps;
    a.resize(dim, crate::linalg::C64::new(0.0, 0.0));
    Ok((
        HermitianOperator::from_triplets(dim, trip)?,
        StateVector::new(q, a)?,
    ))
}

/// Padding states sit at energy 1 with zero weight; drop that level when it
/// carries no physical eigenvalue.
fn drop_padding(mut levels: Vec<(f64, f64)>, phys: usize, dim: usize) -> Vec<(f64, f64)> {
    if dim > phys {
        if let Some(last) = levels.last() {
            if (last.0 - 1.0).abs() <= policy().degeneracy_tol && last.1 == 0.0 {
                levels.pop();
            }
        }
    }
    levels
}

// ------------------------------------------------------------------- poly-box

/// Target additive error and failure probability of a marginal estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyBoxParams {
    pub delta_p: f64,
    pub epsilon_p: f64,
}

impl PolyBoxParams {
    pub fn new(delta_p: f64, epsilon_p: f64) -> Result<Self> {
        if !(delta_p > 0.0 && delta_p < 1.0) || !(epsilon_p > 0.0 && epsilon_p < 1.0) {
            return Err(Error::validation(format!(
                "poly-box: need 0 < delta_p, epsilon_p < 1, got {delta_p}, {epsilon_p}"
            )));
        }
        Ok(Self { delta_p, epsilon_p })
    }

    /// `s = ⌈ln(2/ε_p)·2(T+1)²/δ_p²⌉`.
    pub fn sample_count(&self, steps: usize) -> u64 {
        let t1 = (steps + 1) as f64;
        ((2.0 / self.epsilon_p).ln() * 2.0 * t1 * t1 / (self.delta_p * self.delta_p)).ceil() as u64
    }

    /// Sampler `ε = β = δ_p/(4(T+1))`, so that `ε + β = δ_p/(2(T+1))`.
    pub fn sampler_budget(&self, steps: usize) -> (f64, f64) {
        let e = self.delta_p / (4.0 * (steps + 1) as f64);
        (e, e)
    }
}

/// One marginal estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyBoxEstimate {
    pub p_hat: f64,
    pub q_hat: f64,
    pub samples: u64,
    pub seed: u64,
}

/// A prepared estimator for `p = Σ_{y∈S*} |⟨y|U|x⟩|²`.
#[derive(Debug, Clone)]
pub struct PolyBox {
    pub params: PolyBoxParams,
    pub steps: usize,
    pub instance: GroundStateInstance,
    pub noise: NoiseModel,
}

impl PolyBox {
    pub fn new(
        circuit: &CircuitIR,
        x: usize,
        spec: &MarginalSpec,
        params: PolyBoxParams,
        noise: NoiseModel,
    ) -> Result<Self> {
        let fk = FKOperator::for_marginal(circuit, spec.clone())?;
        Ok(Self {
            params,
            steps: circuit.len(),
            instance: GroundStateInstance::new(&fk, x)?,
            noise,
        })
    }

    pub fn samples(&self) -> u64 {
        self.params.sample_count(self.steps)
    }

    /// Draw `s` energies from an `(ε, β)` sampler and return
    /// `p̂ = (T+1)·q̂_s`.
    pub fn estimate(&self, seed: u64) -> Result<PolyBoxEstimate> {
        let (eps, beta) = self.params.sampler_budget(self.steps);
        let inst = &self.instance;
        let sampler = lemma1_sampler(&inst.ideal, inst.gap, eps, beta, self.noise, seed)?;
        let s = self.samples();
        let counts = sample_counts(&sampler.output.q, s, seed.wrapping_add(0x9e37));
        let hits: u64 = ground_window(inst.ideal.grid, inst.gap)
            .iter()
            .map(|&m| counts[m])
            .sum();
        let q_hat = hits as f64 / s as f64;
        Ok(PolyBoxEstimate {
            p_hat: (self.steps + 1) as f64 * q_hat,
            q_hat,
            samples: s,
            seed,
        })
    }
}

/// `p̂` for one marginal query.
pub fn polybox_estimate(
    circuit: &CircuitIR,
    x: usize,
    spec: &MarginalSpec,
    params: PolyBoxParams,
    noise: NoiseModel,
    seed: u64,
) -> Result<PolyBoxEstimate> {
    PolyBox::new(circuit, x, spec, params, noise)?.estimate(seed)
}

/// Empirical success rate of repeated estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyBoxReport {
    pub params: PolyBoxParams,
    pub noise: NoiseModel,
    pub p_exact: f64,
    pub samples: u64,
    pub runs: usize,
    pub successes: usize,
    pub rate: f64,
    /// Binomial standard deviation `√(ε_p(1 − ε_p)/runs)`.
    pub sigma: f64,
    /// `1 − ε_p − 3σ`.
    pub threshold: f64,
    pub mean_p_hat: f64,
    pub seed: u64,
    pub pass: bool,
}

/// Repeat the estimate `runs` times on independent streams and count
/// `|p̂ − p| ≤ δ_p` against the brute-force marginal.
pub fn polybox_success_rate(
    circuit: &CircuitIR,
    x: usize,
    spec: &MarginalSpec,
    params: PolyBoxParams,
    noise: NoiseModel,
    runs: usize,
    seed: u64,
) -> Result<PolyBoxReport> {
    if runs == 0 {
        return Err(Error::validation("runs: need at least one run"));
    }
    let pb = PolyBox::new(circuit, x, spec, params, noise)?;
    let p_exact = marginal_probability(circuit, x, spec)?;
    let estimates = (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::stream(seed, i as u64);
            pb.estimate(r.random())
        })
        .collect::<Result<Vec<_>>>()?;
    let successes = estimates
        .iter()
        .filter(|e| (e.p_hat - p_exact).abs() <= params.delta_p)
        .count();
    let rate = successes as f64 / runs as f64;
    let sigma = (params.epsilon_p * (1.0 - params.epsilon_p) / runs as f64).sqrt();
    let threshold = 1.0 - params.epsilon_p - 3.0 * sigma;
    Ok(PolyBoxReport {
        params,
        noise,
        p_exact,
        samples: pb.samples(),
        runs,
        successes,
        rate,
        sigma,
        threshold,
        mean_p_hat: estimates.iter().map(|e| e.p_hat).sum::<f64>() / runs as f64,
        seed,
        pass: rate >= threshold,
    })
}

// ----------------------------------------------------------------- diagnostics

/// `q/c + β/(2^m ν)·(1 + 1/c)`, with `c` standing in for the polynomial
/// factor.
pub fn stockmeyer_error(q: f64, m: u32, beta: f64, nu: f64, c: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::validation(format!("nu: {nu} not in (0,1)")));
    }
    if !(c > 0.0) || !(beta >= 0.0) || !(0.0..=1.0).contains(&q) {
        return Err(Error::validation(format!(
            "need c > 0, beta >= 0 and q in [0,1], got {c}, {beta}, {q}"
        )));
    }
    Ok(q / c + beta / ((m as f64).exp2() * nu) * (1.0 + 1.0 / c))
}

/// Fraction of output probabilities above `α/2^n` over random inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnticoncentrationReport {
    pub rows: usize,
    pub cols: usize,
    pub trials: usize,
    pub alpha: f64,
    pub angles: Vec<f64>,
    pub fraction: f64,
    /// Spread of the per-trial fractions.
    pub std_dev: f64,
    pub seed: u64,
}

/// Probabilities within `1e-12` below `α/2^n` count as reaching it, and
/// nothing below `1e-12` counts as positive.
pub fn anticoncentration_stats(
    lattice: &LatticeSpec,
    trials: usize,
    alpha: f64,
    angles: &[f64],
    seed: u64,
) -> Result<AnticoncentrationReport> {
    if trials == 0 || !(alpha >= 0.0) {
        return Err(Error::validation("need trials > 0 and alpha >= 0"));
    }
    let n = lattice.num_qubits();
    let u = build_u2d(lattice)?;
    let threshold = (alpha / (1u64 << n) as f64 - DIST_TOL).max(DIST_TOL);
    let fractions = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::stream(seed, i as u64);
            let input = ProductInput::random(n, angles, &mut r)?;
            let p = output_distribution(&u, &build_input_state(&input)?)?;
            Ok(p.probs().iter().filter(|&&v| v > threshold).count() as f64 / p.len() as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = fractions.iter().sum::<f64>() / trials as f64;
    let var = fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / trials as f64;
    Ok(AnticoncentrationReport {
        rows: lattice.rows,
        cols: lattice.cols,
        trials,
        alpha,
        angles: angles.to_vec(),
        fraction: mean,
        std_dev: var.sqrt(),
        seed,
    })
}

/// Exact energy distribution of an FK readout, for callers that want the
/// full-space route (including inert clock states).
pub fn fk_readout_distribution(
    fk: &FKOperator,
    x: usize,
    grid: EnergyGrid,
) -> Result<EnergyDistribution> {
    exact_energy_distribution(&fk.scaled()?, &fk.readout_state(x)?, grid)
}
