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

//! Property-based invariants across modules.

use enspec::circuit::{simulate, CircuitIR, MarginalSpec};
use enspec::energy::{perturb_distribution, sample_counts, EnergyGrid};
use enspec::fast_forward::{approximate_phase, FFParams, PhaseRounding};
use enspec::linalg::{l1_distance, DiscreteDistribution, StateVector, C64};
use enspec::pauli::PauliString;
use enspec::reductions::{algorithm1_decode, stockmeyer_error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn distribution() -> impl Strategy<Value = DiscreteDistribution> {
    prop::collection::vec(0.01f64..1.0, 2..40)
        .prop_map(|w| DiscreteDistribution::from_weights(w).unwrap())
}

proptest! {
    #[test]
    fn perturbation_has_exact_l1(p in distribution(), frac in 0.0f64..1.0, seed: u64) {
        let max_p = p.probs().iter().cloned().fold(0.0, f64::max);
        // Leave room for an acceptor: mass ≤ 1 − min p.
        let min_p = p.probs().iter().cloned().fold(1.0, f64::min);
        let beta = frac * 2.0 * (1.0 - min_p).min(1.0 - max_p.min(0.99)).max(0.0);
        let q = perturb_distribution(&p, beta, seed).unwrap();
        prop_assert!((l1_distance(&p, &q).unwrap() - beta).abs() < 1e-12);
    }

    #[test]
    fn decoder_inverts_every_window(n in 1usize..12, z_frac in 0.0f64..1.0) {
        let z = ((z_frac * (1usize << n) as f64) as usize).min((1 << n) - 1);
        prop_assert_eq!(algorithm1_decode(3 * z, n), z);
        prop_assert_eq!(algorithm1_decode(3 * z + 1, n), z);
        if z > 0 {
            prop_assert_eq!(algorithm1_decode(3 * z - 1, n), z);
        }
    }

    #[test]
    fn nearest_bin_is_within_half_a_step(k in 1u64..5000, lambda in 0.0f64..=1.0) {
        let g = EnergyGrid::new(k).unwrap();
        let m = g.nearest_bin(lambda);
        prop_assert!((g.energy(m) - lambda).abs() <= g.delta_f64() / 2.0 + 1e-15);
        prop_assert!(g.energy(g.truncated_bin(lambda)) <= lambda + 1e-15);
    }

    #[test]
    fn sample_counts_sum_to_shots(p in distribution(), shots in 0u64..50_000, seed: u64) {
        let c = sample_counts(&p, shots, seed);
        prop_assert_eq!(c.iter().sum::<u64>(), shots);
        prop_assert_eq!(c, sample_counts(&p, shots, seed));
    }

    #[test]
    fn phase_error_within_bound(f in 0.0f64..1.0, t in 0.0f64..1e6, bits in 1u32..30, round: bool) {
        let mut p = FFParams::new(t, bits).unwrap();
        if round {
            p.rounding = PhaseRounding::Round;
        }
        let exact = (f * t).rem_euclid(std::f64::consts::TAU);
        let err = (C64::from_polar(1.0, -exact) - C64::from_polar(1.0, -approximate_phase(f, &p))).norm();
        // Relative float error of f·T at this magnitude is far below the bound.
        prop_assert!(err <= p.bound() + 1e-8, "{err} > {}", p.bound());
    }

    #[test]
    fn inverse_circuit_undoes_circuit(n in 1usize..4, gates in 1usize..12, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = CircuitIR::random(n, gates, &mut rng).unwrap();
        let psi = StateVector::basis(n, (seed as usize) % (1 << n)).unwrap();
        let back = simulate(&c.inverse(), &simulate(&c, &psi).unwrap()).unwrap();
        prop_assert!((back.inner(&psi).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginal_spec_round_trips(bits in prop::collection::vec(any::<bool>(), 1..8)) {
        let spec = MarginalSpec::new((0..bits.len()).collect(), bits.iter().map(|&b| b as u8).collect()).unwrap();
        let parsed: MarginalSpec = spec.to_string().parse().unwrap();
        prop_assert_eq!(parsed, spec);
    }

    #[test]
    fn pauli_labels_round_trip(label in "[IXYZ]{1,12}") {
        let (n, p) = PauliString::parse(&label).unwrap();
        prop_assert_eq!(p.to_label(n), label);
    }

    #[test]
    fn stockmeyer_is_monotone(q in 0.0f64..1.0, m in 0u32..20, beta in 0.0f64..0.5, nu in 0.01f64..0.99, c in 1.0f64..1e3) {
        let base = stockmeyer_error(q, m, beta, nu, c).unwrap();
        prop_assert!(stockmeyer_error(q, m, beta + 0.01, nu, c).unwrap() > base);
        prop_assert!(stockmeyer_error(q, m + 1, beta, nu, c).unwrap() <= base);
        prop_assert!(stockmeyer_error(q, m, beta, (nu + 1.0) / 2.0, c).unwrap() <= base);
        prop_assert!(stockmeyer_error(q, m, beta, nu, c * 2.0).unwrap() <= base);
    }
}
