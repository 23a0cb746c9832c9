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

//! Energy sampling at resolution 2^-n for a lattice Hamiltonian: exact
//! sampler distribution, shot histogram and the injected sampling error.

use enspec::diag::{build_h2d_preset, WeightPreset};
use enspec::energy::{
    diagonal_energy_distribution, sample_theorem1, theorem1_distribution, EnergyGrid, SamplerParams,
};
use enspec::iqp::{build_input_state, LatticeSpec, ProductInput};

fn main() -> enspec::Result<()> {
    let lattice = LatticeSpec::new(2, 2)?;
    let h = build_h2d_preset(&lattice, WeightPreset::U)?;
    let input = ProductInput::new(
        vec![0.0, std::f64::consts::FRAC_PI_4, 0.0, 0.0],
        vec![0, 1, 0, 0],
    )?;
    let state = build_input_state(&input)?;
    let digits = 4;
    let ideal = diagonal_energy_distribution(&h, &state, EnergyGrid::dyadic(digits)?)?;

    for beta in [0.0, 0.01, 0.1] {
        let d = theorem1_distribution(&h, &state, digits, beta, 3)?;
        println!("beta = {beta:<5} l1 to ideal = {:.3e}", d.l1(&ideal)?);
    }

    let params = SamplerParams::new(EnergyGrid::dyadic(digits)?.delta_f64(), 1.0, 0.0, 42)?;
    let hist = sample_theorem1(&h, &state, digits, &params, 20_000)?;
    println!("\nenergy   exact    sampled");
    for (m, (p, f)) in ideal.probs().iter().zip(hist.frequencies()).enumerate() {
        if *p > 0.0 || f > 0.0 {
            println!("{:<8} {p:.4}   {f:.4}", hist.grid.energy(m));
        }
    }
    println!("shot l1 = {:.4}", hist.l1_to(&ideal));
    Ok(())
}
