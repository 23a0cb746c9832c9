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

//! Phase-table evolution for exponentially long times: error against the
//! bound and construction time as T grows.

use std::time::Instant;

use enspec::diag::{build_h2d_preset, WeightPreset};
use enspec::fast_forward::{build_ff_unitary, verify_ff, FFParams};
use enspec::iqp::LatticeSpec;

fn main() -> enspec::Result<()> {
    let h = build_h2d_preset(&LatticeSpec::new(2, 2)?, WeightPreset::U)?;
    println!("log2 T  bits  distance     bound        build (us)");
    for log_t in [0, 10, 20, 30, 40] {
        for bits in [4, 8, 16] {
            let p = FFParams::new((log_t as f64).exp2(), bits)?;
            let start = Instant::now();
            for _ in 0..20 {
                std::hint::black_box(build_ff_unitary(&h, &p)?);
            }
            let per_build = start.elapsed().as_secs_f64() / 20.0;
            let r = verify_ff(&h, &p)?;
            println!(
                "{log_t:>6}  {bits:>4}  {:.4e}   {:.4e}   {:.1}",
                r.distance,
                r.bound,
                per_build * 1e6
            );
        }
    }
    Ok(())
}
