// SPDX-License-Identifier: Apache-2.0

//! Exhaustive simulation, exactness certification, and polynomial checks.

pub mod exactness;
pub mod poly;
pub mod run;

pub use exactness::{truth_for, verify_exactness, Counterexample, Truth, VerificationReport, VerifyOptions};
pub use run::{run, trace, Chooser, Memo, RunResult, Summary, TraceRecord};
