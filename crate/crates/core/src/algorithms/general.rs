// SPDX-License-Identifier: Apache-2.0

//! One-query elimination steps with an ancilla qubit.
//!
//! Both steps prepare `a|a0,S> + |a1,S>`, compute the sum and differences
//! under `|a1>`, and rotate the ancilla next to `|S>`. A surviving `|a·,S>`
//! outcome rules out one of two sums; a pair outcome removes two different
//! bits.

use std::sync::Arc;

use super::basic::build_exact_k;
use super::cached;
use crate::error::{Error, Result};
use crate::gadgets::{hadamard, q_rotation, u_pair, IndexRule};
use crate::plan::{End, Entry, LabelMap, Node, PairTemplate, Params, Pattern, Plan, Prep, Removal, Step};
use crate::state::{Base, Binding, Classifier, IsometryGadget, Label, LabeledState, MeasurementPartition, OutcomeKey, Prefix};

/// Where an outcome of an elimination step leads.
#[derive(Debug, Clone)]
pub enum Next {
    Leaf(bool),
    /// Continue with this plan. Pair outcomes drop their two variables;
    /// the other outcomes keep all variables and append `append`.
    Plan { plan: Arc<Plan>, append: Vec<bool> },
}

impl Next {
    pub fn plan(plan: Arc<Plan>) -> Self {
        Next::Plan { plan, append: Vec::new() }
    }
}

/// Continuations of an elimination step.
#[derive(Debug, Clone)]
pub struct StepChildren {
    pub a0: Next,
    pub a1: Next,
    pub pair: Next,
}

fn anc_s(a: u8) -> Label {
    Label::Composite(Prefix::Ancilla(a), Base::S)
}

fn continuation(next: Next, uncompute: Prep, remove: Removal) -> Arc<Node> {
    match next {
        Next::Leaf(bit) => Node::leaf(bit),
        Next::Plan { plan, append } => Node::call(vec![Step::Uncompute(uncompute)], &plan, remove, append, LabelMap::Identity),
    }
}

fn step_node(n: usize, a0_weight: f64, rotation: (IsometryGadget, Binding), pair: PairTemplate, children: StepChildren) -> Arc<Node> {
    let prep = LabeledState::from_real([(anc_s(0), a0_weight), (anc_s(1), 1.0)]);
    let un = u_pair(n);
    let control = Binding::Controlled { ancilla: 1 };
    let (gadget, binding) = rotation;
    let steps = vec![
        Step::Prepare(Prep::fixed(&prep)),
        Step::gadget(&un.inverse, control),
        Step::Query(IndexRule::Trailing),
        Step::gadget(&un.forward, control),
        Step::gadget(&Arc::new(gadget), binding),
    ];
    let single = |a: u8| LabeledState::from_real([(anc_s(a), 1.0)]);
    let StepChildren { a0, a1, pair: pair_next } = children;
    Node::new(
        steps,
        End::Measure {
            partition: MeasurementPartition::new(Classifier::DataPair),
            children: vec![
                (Pattern::Key(OutcomeKey::Label(anc_s(0))), continuation(a0, Prep::fixed(&single(0)), Removal::None)),
                (Pattern::Key(OutcomeKey::Label(anc_s(1))), continuation(a1, Prep::fixed(&single(1)), Removal::None)),
                (Pattern::AnyPair, continuation(pair_next, Prep::Outcome(pair), Removal::OutcomePair)),
                (Pattern::Any, Node::unreachable()),
            ],
        },
    )
}

/// Symmetric step on `n` variables separating `Σ x̂ = -d` (outcome `a0`
/// impossible) from `Σ x̂ = d` (outcome `a1` impossible).
pub fn general_step_node(n: usize, d: usize, children: StepChildren) -> Arc<Node> {
    let h = (hadamard(), Binding::AncillaRegister { only_data: None });
    step_node(n, d as f64 / n as f64, h, PairTemplate::AncillaDiff, children)
}

/// Asymmetric step on `n` variables: outcome `a0` is impossible when
/// `Σ x̂ = u`, outcome `a1` when `Σ x̂ = -w`.
pub fn uw_step_node(n: usize, u: usize, w: usize, children: StepChildren) -> Result<Arc<Node>> {
    let q = q_rotation(u as f64, w as f64)?;
    let binding = Binding::AncillaRegister { only_data: Some(Base::S) };
    Ok(step_node(n, ((u * w) as f64).sqrt() / n as f64, (q, binding), PairTemplate::AncillaOne, children))
}

/// Outputs 1 iff `|x| ∈ {k, n - k}` for `2k < n`, in `n - k + 1` queries.
pub fn build_general_unbalance(n: usize, k: usize) -> Result<Arc<Plan>> {
    if 2 * k >= n {
        return Err(Error::Domain(format!("need 2k < n, got n = {n}, k = {k}")));
    }
    cached(format!("general/{n}/{k}"), || {
        let pair = if k == 0 { Next::Leaf(false) } else { Next::plan(build_general_unbalance(n - 2, k - 1)?) };
        let children = StepChildren {
            a0: Next::plan(build_exact_k(n, k)?),
            a1: Next::plan(build_exact_k(n, n - k)?),
            pair,
        };
        let root = general_step_node(n, n - 2 * k, children);
        let params = Params { k: Some(k), d: Some(n - 2 * k), ..Params::n(n) };
        Ok(Plan::new("general", params, n - k + 1, Entry::Scratch, root))
    })
}

fn uw_claim(n: usize, u: usize, w: usize) -> usize {
    match (u > n, w > n) {
        (true, true) => 0,
        (true, false) => (n + w) / 2,
        (false, true) => (n + u) / 2,
        (false, false) => {
            let below = if n >= 2 { uw_claim(n - 2, u, w) } else { 0 };
            1 + below.max((n + u.max(w)) / 2)
        }
    }
}

/// Outputs 1 iff `Σ x̂ ∈ {u, -w}` by repeating the asymmetric step.
pub fn build_uw(n: usize, u: usize, w: usize) -> Result<Arc<Plan>> {
    if u == 0 || w == 0 || u > n || w > n || (n + u) % 2 == 1 || (n + w) % 2 == 1 {
        return Err(Error::Domain(format!("need 1 <= u, w <= n with u ≡ w ≡ n (mod 2), got n = {n}, u = {u}, w = {w}")));
    }
    uw_inner(n, u, w)
}

fn uw_inner(n: usize, u: usize, w: usize) -> Result<Arc<Plan>> {
    cached(format!("uw/{n}/{u}/{w}"), || {
        let params = Params { u: Some(u), w: Some(w), ..Params::n(n) };
        let claim = uw_claim(n, u, w);
        let wrap = |plan: Arc<Plan>| {
            let root = Node::call(Vec::new(), &plan, Removal::None, Vec::new(), LabelMap::Identity);
            Plan::new("uw", params.clone(), claim, Entry::Scratch, root)
        };
        let high = || build_exact_k(n, (n + w) / 2);
        let low = || build_exact_k(n, (n - u) / 2);
        match (u > n, w > n) {
            (true, true) => Ok(Plan::new("uw", params.clone(), 0, Entry::Scratch, Node::leaf(false))),
            (true, false) => Ok(wrap(high()?)),
            (false, true) => Ok(wrap(low()?)),
            (false, false) => {
                let children = StepChildren {
                    a0: Next::plan(high()?),
                    a1: Next::plan(low()?),
                    pair: if n >= 2 { Next::plan(uw_inner(n - 2, u, w)?) } else { Next::Leaf(false) },
                };
                let root = uw_step_node(n, u, w, children)?;
                Ok(Plan::new("uw", params.clone(), claim, Entry::Scratch, root))
            }
        }
    })
}
