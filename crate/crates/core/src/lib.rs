// SPDX-License-Identifier: Apache-2.0

//! Exact quantum query algorithms for symmetric functions, built as
//! adaptive branching programs over labeled sparse states and checked by
//! exhaustive simulation.

pub mod algorithms;
pub mod error;
pub mod gadgets;
pub mod plan;
pub mod state;
pub mod verifier;

pub use algorithms::{
    build_balanced, build_constant, build_equality, build_exact_k, build_exact_kl, build_general_unbalance,
    build_sym, build_unb, build_unbr, build_uw, build_xor, gamma_chain, gamma_next, solve_step_constants,
    GammaChain, StepConstants, SymSpec, SymStrategy,
};
pub use error::{Error, Result};
pub use plan::{Entry, Params, Plan, PlanMeta};
pub use state::{Label, LabeledState};
pub use verifier::{truth_for, verify_exactness, Truth, VerificationReport, VerifyOptions};
