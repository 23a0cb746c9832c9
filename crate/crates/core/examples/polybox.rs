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

//! Estimate a marginal output probability from energy samples of a clock
//! Hamiltonian and measure the success rate against the exact value.

use enspec::circuit::{marginal_probability, CircuitIR, MarginalSpec};
use enspec::reductions::{polybox_estimate, polybox_success_rate, NoiseModel, PolyBoxParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> enspec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let spec: MarginalSpec = "0=1".parse()?;
    // A circuit whose marginal is far from 0 and 1 makes a better demo.
    let circuit = loop {
        let c = CircuitIR::random(3, 4, &mut rng)?;
        if (0.2..=0.8).contains(&marginal_probability(&c, 0, &spec)?) {
            break c;
        }
    };
    let params = PolyBoxParams::new(0.1, 0.1)?;
    println!(
        "samples per estimate: {}",
        params.sample_count(circuit.len())
    );
    for x in 0..4 {
        let p = marginal_probability(&circuit, x, &spec)?;
        let e = polybox_estimate(&circuit, x, &spec, params, NoiseModel::Random, x as u64)?;
        println!("x = {x}: p = {p:.4}, estimate {:.4}", e.p_hat);
    }
    for noise in [
        NoiseModel::Random,
        NoiseModel::Saturating,
        NoiseModel::Inward,
    ] {
        let r = polybox_success_rate(&circuit, 0, &spec, params, noise, 50, 1)?;
        println!(
            "{noise:?}: {}/{} within delta_p (threshold {:.3})",
            r.successes, r.runs, r.threshold
        );
    }
    Ok(())
}
