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

//! Heisenberg-picture conjugation of `Z_l` through the lattice IQP circuit:
//! every site maps to a single Pauli string supported on its neighbourhood.

use enspec::iqp::{conjugate_z, LatticeSpec};

fn main() -> enspec::Result<()> {
    let lattice = LatticeSpec::new(3, 3)?;
    let graph = lattice.u2d_graph();
    println!("site  degree  string      coeff");
    for l in 0..lattice.num_qubits() {
        for (p, c) in conjugate_z(l, &graph, false)?.iter() {
            println!(
                "{l:>4}  {:>6}  {}  {c:+.3}",
                graph.degree(l),
                p.to_label(lattice.num_qubits())
            );
        }
    }
    // In the Hadamard-rotated frame the neighbours carry Z; the centre letter
    // is X without the on-site term and Y with it.
    let swapped = conjugate_z(4, &graph, true)?;
    println!("\ncentre site, rotated frame: {swapped}");
    Ok(())
}
