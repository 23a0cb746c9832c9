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

//! Exact and sampled energy measurements for diagonalizable Hamiltonians,
//! with classical reductions from circuit marginals.

pub mod circuit;
pub mod cli;
pub mod diag;
pub mod energy;
pub mod error;
pub mod fast_forward;
pub mod fk;
pub mod io;
pub mod iqp;
pub mod linalg;
pub mod pauli;
pub mod policy;
pub mod reductions;
pub mod rng;

pub use error::{Error, Result};
