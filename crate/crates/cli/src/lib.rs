// SPDX-License-Identifier: Apache-2.0

//! Command implementations and report types behind the `exactq` binary.
//!
//! Exit codes: 0 success, 1 verification or audit failure, 2 invalid input.

pub mod args;
pub mod commands;
pub mod output;
pub mod report;

/// Failure classes mapped to process exit codes.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not pass.
    Check(String),
    /// Parameters were rejected before anything ran.
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl From<exactq_core::Error> for Failure {
    fn from(err: exactq_core::Error) -> Self {
        match err {
            exactq_core::Error::DivergedChain { .. } => Failure::Check(err.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Input(err.to_string())
    }
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Check(msg) | Failure::Input(msg) => msg,
        }
    }
}
