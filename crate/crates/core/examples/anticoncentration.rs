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

//! Fraction of lattice IQP output probabilities above α/2^n over random
//! inputs (report only).

use enspec::iqp::{LatticeSpec, DEFAULT_ANGLES};
use enspec::reductions::anticoncentration_stats;

fn main() -> enspec::Result<()> {
    for (r, c) in [(2, 2), (2, 3), (3, 3)] {
        let lattice = LatticeSpec::new(r, c)?;
        for alpha in [0.5, 1.0, 2.0] {
            let s = anticoncentration_stats(&lattice, 100, alpha, &DEFAULT_ANGLES, 1)?;
            println!(
                "{r}x{c} alpha {alpha}: fraction {:.4} (std over inputs {:.4})",
                s.fraction, s.std_dev
            );
        }
    }
    Ok(())
}
