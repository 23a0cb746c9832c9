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

use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// The variants map one-to-one onto the command-line exit codes: validation
/// and parse problems exit with 2, resource guards with 3 and failed
/// certifications with 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension {dim} exceeds the {limit} limit for {what}")]
    Resource {
        what: &'static str,
        dim: usize,
        limit: usize,
    },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit status associated with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Json(_) | Error::Io(_) => 2,
            Error::Resource { .. } => 3,
            Error::Certification(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
