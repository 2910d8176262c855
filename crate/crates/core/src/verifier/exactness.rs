// SPDX-License-Identifier: Apache-2.0

//! Exhaustive exactness check over all `2^n` inputs.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{run, Memo};
use crate::error::{Error, Result};
use crate::plan::{Entry, Params, Plan};

/// A symmetric target function, by value on each Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truth {
    pub by_weight: Vec<bool>,
}

impl Truth {
    pub fn from_weights(n: usize, weights: &[usize]) -> Self {
        Self { by_weight: (0..=n).map(|w| weights.contains(&w)).collect() }
    }

    /// `Σ x̂ ∈ {d, -d}`.
    pub fn unbalance(n: usize, d: usize) -> Self {
        if d > n || (n + d) % 2 == 1 {
            return Self::from_weights(n, &[]);
        }
        Self::from_weights(n, &[(n - d) / 2, (n + d) / 2])
    }

    pub fn value(&self, bits: &[bool]) -> bool {
        self.by_weight[bits.iter().filter(|&&b| b).count()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Reachability threshold on branch probability.
    pub eps_branch: f64,
    /// Largest `n` verified exhaustively.
    pub max_n: usize,
    /// Allowed probability of a wrong or missing answer per input.
    pub tol: f64,
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { eps_branch: crate::state::EPS_BRANCH, max_n: 20, tol: 1e-9, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// `x_1 ... x_n` as a bit string.
    pub x: String,
    pub expected: bool,
    /// The wrong answer, or `None` when probability was lost to an
    /// unreachable leaf or a call boundary.
    pub output: Option<bool>,
    /// Probability of that outcome.
    pub norm2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub params: Params,
    pub n: usize,
    pub claimed_bound: usize,
    pub worst_case_queries: usize,
    pub structural_depth: usize,
    pub inputs_checked: usize,
    /// Inputs on which the entry state vanishes (precomputed entries only).
    pub inputs_skipped: usize,
    /// Worst per-input probability of a wrong or missing answer.
    pub max_error: f64,
    /// Worst deviation of total probability from 1.
    pub max_norm_residual: f64,
    pub exact: bool,
    pub within_claim: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.exact && self.within_claim
    }
}

/// At most this many counterexamples are kept.
const MAX_COUNTEREXAMPLES: usize = 16;

#[derive(Debug, Clone, Copy)]
struct InputOutcome {
    skipped: bool,
    queries: usize,
    error: f64,
    wrong: f64,
    bad: f64,
    residual: f64,
}

fn bits_of(x: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| x >> i & 1 == 1).collect()
}

fn check_one(plan: &Arc<Plan>, truth: &Truth, x: u64, opts: &VerifyOptions, memo: &mut Memo) -> Result<InputOutcome> {
    let bits = bits_of(x, plan.n());
    let res = run(plan, &bits, opts.eps_branch, Some(memo))?;
    if res.root.is_none() {
        return Ok(InputOutcome { skipped: true, queries: 0, error: 0.0, wrong: 0.0, bad: 0.0, residual: 0.0 });
    }
    let s = res.summary();
    let f = truth.value(&bits) as usize;
    let wrong = s.mass[1 - f];
    let bad = s.bad_mass + s.pruned_mass;
    Ok(InputOutcome {
        skipped: false,
        queries: s.max_queries,
        error: wrong + bad + (1.0 - s.total()).abs(),
        wrong,
        bad,
        residual: (1.0 - s.total()).abs().max(s.norm_residual),
    })
}

/// Runs `plan` on every input and compares with `truth`. Bit `i - 1` of the
/// input counter is `x_i`. The report does not depend on `opts.parallel`.
pub fn verify_exactness(plan: &Arc<Plan>, truth: &Truth, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = plan.n();
    if n > opts.max_n {
        return Err(Error::TooLarge { what: "exhaustive verification", n, limit: opts.max_n });
    }
    if truth.by_weight.len() != n + 1 {
        return Err(Error::ArityMismatch { expected: n + 1, got: truth.by_weight.len() });
    }
    let count = 1u64 << n;
    let outcomes: Vec<InputOutcome> = if opts.parallel {
        (0..count)
            .into_par_iter()
            .map_init(Memo::default, |memo, x| check_one(plan, truth, x, opts, memo))
            .collect::<Result<_>>()?
    } else {
        let mut memo = Memo::default();
        (0..count).map(|x| check_one(plan, truth, x, opts, &mut memo)).collect::<Result<_>>()?
    };
    let mut report = VerificationReport {
        family: plan.meta.family.clone(),
        params: plan.meta.params.clone(),
        n,
        claimed_bound: plan.claimed_queries(),
        worst_case_queries: 0,
        structural_depth: plan.structural_depth(),
        inputs_checked: 0,
        inputs_skipped: 0,
        max_error: 0.0,
        max_norm_residual: 0.0,
        exact: true,
        within_claim: true,
        counterexamples: Vec::new(),
    };
    for (x, o) in outcomes.iter().enumerate() {
        if o.skipped {
            report.inputs_skipped += 1;
            continue;
        }
        report.inputs_checked += 1;
        report.worst_case_queries = report.worst_case_queries.max(o.queries);
        report.max_error = report.max_error.max(o.error);
        report.max_norm_residual = report.max_norm_residual.max(o.residual);
        if o.error >= opts.tol {
            report.exact = false;
            if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                let bits = bits_of(x as u64, n);
                let expected = truth.value(&bits);
                let (output, norm2) = if o.wrong >= o.bad { (Some(!expected), o.wrong) } else { (None, o.bad) };
                report.counterexamples.push(Counterexample {
                    x: bits.iter().map(|&b| if b { '1' } else { '0' }).collect(),
                    expected,
                    output,
                    norm2,
                });
            }
        }
    }
    report.within_claim = report.worst_case_queries <= report.claimed_bound;
    Ok(report)
}

/// Target function a plan is meant to compute, inferred from its family.
pub fn truth_for(plan: &Plan) -> Option<Truth> {
    let p = &plan.meta.params;
    let n = p.n;
    Some(match plan.meta.family.as_str() {
        "equality" => Truth::from_weights(n, &[0, n]),
        "xor" => Truth::from_weights(n, &[1]),
        "constant" => Truth { by_weight: vec![p.k? == 1; n + 1] },
        "balanced" if n.is_multiple_of(2) => Truth::from_weights(n, &[n / 2]),
        "balanced" => Truth::from_weights(n, &[]),
        "exact_k" => Truth::from_weights(n, &[p.k?]),
        "exact_kl" => Truth::from_weights(n, &[p.k?, p.l?]),
        "general" => Truth::from_weights(n, &[p.k?, n - p.k?]),
        "unb" | "unbr" | "unbr-base" => Truth::unbalance(n, p.d?),
        "uw" => {
            let (u, w) = (p.u?, p.w?);
            let mut weights = Vec::new();
            if u <= n {
                weights.push((n - u) / 2);
            }
            if w <= n {
                weights.push((n + w) / 2);
            }
            Truth::from_weights(n, &weights)
        }
        "sym" => Truth {
            by_weight: p.a.as_ref()?.chars().map(|c| c == '1').collect(),
        },
        _ => return None,
    })
}

/// Whether the plan starts from the precomputed state.
pub fn is_precomputed(plan: &Plan) -> bool {
    matches!(plan.entry, Entry::Precomputed { .. })
}
