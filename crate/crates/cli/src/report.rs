// SPDX-License-Identifier: Apache-2.0

//! Serializable outputs of each command.

use exactq_core::algorithms::gamma::ChainEntry;
use exactq_core::verifier::Counterexample;
use exactq_core::Params;
use serde::{Deserialize, Serialize};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Per-input result, only with `--verbose`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputRow {
    /// `x_1 ... x_n`.
    pub x: String,
    pub expected: bool,
    /// Probability of output 1; `None` where the entry state vanishes.
    pub accept: Option<f64>,
    pub queries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: String,
    pub params: Params,
    pub exact: bool,
    pub worst_case_queries: usize,
    pub claimed_bound: usize,
    pub max_norm_residual: f64,
    pub tool_version: String,
    pub within_claim: bool,
    pub structural_depth: usize,
    pub inputs_checked: usize,
    pub inputs_skipped: usize,
    pub max_error: f64,
    pub counterexamples: Vec<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inputs: Option<Vec<InputRow>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaReport {
    pub d: usize,
    pub k0: usize,
    pub n_init: usize,
    pub valid: bool,
    pub decays: bool,
    pub rows: Vec<ChainEntry>,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    /// Monomial in `±1` variables, e.g. `x1x3`; `1` for the constant term.
    pub monomial: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafRow {
    pub path: String,
    pub label: String,
    pub degree: usize,
    pub queries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyReport {
    pub family: String,
    pub params: Params,
    pub acceptance: Vec<Coefficient>,
    pub acceptance_degree: usize,
    /// `q(s)` for `s = 0..=n`.
    pub q_values: Vec<f64>,
    /// Monomial coefficients of `q`, lowest degree first.
    pub q_coeffs: Vec<f64>,
    pub q_degree: usize,
    pub audit_leaves: usize,
    pub audit_max_degree: usize,
    pub audit_violations: usize,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaves: Option<Vec<LeafRow>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    /// `step` for one recursive step, `table` for the 18-constant base step.
    pub source: String,
    pub n: usize,
    pub d: usize,
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_prev: Option<f64>,
    pub constants: Vec<NamedValue>,
    pub residuals: Vec<NamedValue>,
    pub max_residual: f64,
    /// Constants whose sign differs from the reference table.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sign_adjusted: Vec<String>,
    pub tool_version: String,
}
