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

//! Ground-state probability read off an energy sampler with a resolution of
//! a third of the gap, under each noise model.

use enspec::circuit::CircuitIR;
use enspec::fk::FKOperator;
use enspec::reductions::{lemma1_from_levels, lemma1_sampler, GroundStateInstance, NoiseModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> enspec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let circuit = CircuitIR::random(2, 3, &mut rng)?;
    // Read out the most likely output string.
    let u = circuit.unitary()?;
    let x = (0..4)
        .max_by(|&a, &b| u[(a, 0)].norm_sqr().total_cmp(&u[(b, 0)].norm_sqr()))
        .unwrap_or(0);
    let fk = FKOperator::with_init(circuit)?;
    let inst = GroundStateInstance::new(&fk, x)?;
    println!(
        "gap {:.4}, grid K = {}, P_GS = {:.6}",
        inst.gap,
        inst.ideal.grid.k(),
        inst.p_gs
    );
    println!("noise        eps    beta   q_GS       |q - P|    eps+beta");
    for noise in [
        NoiseModel::Ideal,
        NoiseModel::Random,
        NoiseModel::Saturating,
        NoiseModel::Inward,
    ] {
        for (eps, beta) in [(0.05, 0.0), (0.0, 0.05), (0.05, 0.05)] {
            let s = lemma1_sampler(&inst.ideal, inst.gap, eps, beta, noise, 9)?;
            let r = lemma1_from_levels(&s.output, &inst.levels, eps, beta)?;
            println!(
                "{:<12} {eps:<6} {beta:<6} {:.6}   {:.6}   {:.2}",
                format!("{noise:?}"),
                r.q_gs,
                r.deviation,
                r.bound
            );
        }
    }
    Ok(())
}
