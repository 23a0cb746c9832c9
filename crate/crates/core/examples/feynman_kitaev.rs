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

//! Clock Hamiltonians for random circuits: ground-space certification and
//! the spectral gap as the circuit grows.

use enspec::circuit::{CircuitIR, MarginalSpec};
use enspec::fk::{certify_ground_space, geometric_check, FKOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> enspec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let spec: MarginalSpec = "0=0".parse()?;
    println!("T  gap(init)   gap(pen)    ground dim  P_GS       geometric margin");
    for t in 2..=8 {
        let c = CircuitIR::random(2, t, &mut rng)?;
        let init = certify_ground_space(&FKOperator::with_init(c.clone())?, 0)?;
        let pen_op = FKOperator::with_penalty(c, spec.clone())?;
        let pen = certify_ground_space(&pen_op, 0)?;
        let margin = (0..4)
            .filter(|&y| !spec.contains(2, y))
            .map(|y| geometric_check(&pen_op, y).map(|g| g.lowest_energy - g.bound))
            .collect::<enspec::Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        println!(
            "{t}  {:.6}    {:.6}    {:>10}  {:.6}   {margin:+.3e}",
            init.gap, pen.gap, pen.ground_dim, init.pgs_check.measured
        );
    }
    Ok(())
}
