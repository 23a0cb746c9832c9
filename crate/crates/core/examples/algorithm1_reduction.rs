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

//! Recover lattice IQP output strings from a noisy energy sampler and
//! compare against the 2ε + β bound, including the worst-case adversary.

use enspec::iqp::{LatticeSpec, ProductInput, DEFAULT_ANGLES};
use enspec::reductions::{theorem2_check, NoiseModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> enspec::Result<()> {
    let lattice = LatticeSpec::new(2, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let input = ProductInput::random(4, &DEFAULT_ANGLES, &mut rng)?;
    println!("eps    beta   noise       l1        bound");
    for (eps, beta) in [(0.0, 0.0), (0.01, 0.02), (0.05, 0.0), (0.02, 0.05)] {
        for noise in [NoiseModel::Random, NoiseModel::Saturating] {
            let r = theorem2_check(&lattice, &input, eps, beta, noise, 1)?;
            println!(
                "{eps:<6} {beta:<6} {:<11} {:.6}  {:.6}{}",
                format!("{noise:?}"),
                r.l1.measured,
                r.l1.bound,
                if r.pass { "" } else { "  VIOLATED" }
            );
        }
    }
    Ok(())
}
