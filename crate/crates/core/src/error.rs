// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::state::Label;

/// Errors raised while building, completing, or executing plans.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("two rewrite rules target label {0:?}")]
    BindingConflict(Label),
    #[error("gadget columns are not orthonormal (residual {residual:e})")]
    NotIsometry { residual: f64 },
    #[error("label {0:?} lies in the gadget space but has no specified column")]
    UnspecifiedColumn(Label),
    #[error("label {0:?} matches no measurement outcome")]
    PartitionGap(Label),
    #[error("query index {index} outside live range 1..={live}")]
    IndexOutOfRange { index: usize, live: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("gamma chain diverged at n = {n} (gamma = {gamma})")]
    DivergedChain { n: usize, gamma: f64 },
    #[error("degenerate case n = d = {0}")]
    DegenerateCase(usize),
    #[error("no valid gamma chain for d = {d}, n = {n}")]
    NoChain { d: usize, n: usize },
    #[error("inconsistent symmetric spec: {0}")]
    InconsistentSpec(String),
    #[error("symmetrization consistency check failed (residual {residual:e})")]
    NotSymmetrizable { residual: f64 },
    #[error("claimed nonzero point {point} evaluates to {value:e}")]
    ZeroWitnessMissing { point: usize, value: f64 },
    #[error("input length {got} does not match plan arity {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{what} limited to n <= {limit}, got {n}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
