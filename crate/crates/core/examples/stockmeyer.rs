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

//! Error budget of approximate counting with a noisy sampler, as a function
//! of the sampling error and the output length.

use enspec::reductions::stockmeyer_error;

fn main() -> enspec::Result<()> {
    let (q, nu, c) = (0.5, 0.1, 100.0);
    println!("m    beta=0      beta=0.01   beta=0.05");
    for m in [2, 4, 8, 16] {
        let row: Vec<String> = [0.0, 0.01, 0.05]
            .iter()
            .map(|&b| stockmeyer_error(q, m, b, nu, c).map(|e| format!("{e:.4e}")))
            .collect::<enspec::Result<_>>()?;
        println!("{m:<4} {}", row.join("  "));
    }
    Ok(())
}
