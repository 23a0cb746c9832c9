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

//! Spectrum and gap of the lattice Hamiltonians for both weight presets.

use enspec::diag::{build_h2d_preset, spectral_gap, WeightPreset};
use enspec::iqp::LatticeSpec;

fn main() -> enspec::Result<()> {
    let lattice = LatticeSpec::new(2, 2)?;
    let h = build_h2d_preset(&lattice, WeightPreset::U)?;
    let mut values = h.eigen().values();
    values.sort_by(f64::total_cmp);
    println!(
        "u weights on 2x2 ({} Pauli terms):",
        h.pauli_form().map_or(0, |p| p.len())
    );
    for v in &values {
        print!("{} ", (v * 16.0) as u32);
    }
    println!("(in units of 1/16)");

    for (r, c) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
        let lat = LatticeSpec::new(r, c)?;
        let h = build_h2d_preset(&lat, WeightPreset::V)?;
        let g = spectral_gap(&h.operator()?)?;
        println!(
            "v weights {r}x{c}: gap {:.6} (1/n = {:.6})",
            g.gap,
            1.0 / lat.num_qubits() as f64
        );
    }
    Ok(())
}
