// SPDX-License-Identifier: Apache-2.0

//! Equality of all bits and the single-weight test `|x| = k`.

use std::sync::Arc;

use super::cached;
use crate::error::Result;
use crate::gadgets::{u_pair, IndexRule};
use crate::plan::{End, Entry, LabelMap, Node, PairTemplate, Params, Pattern, Plan, Prep, Removal, Step};
use crate::state::{Binding, Classifier, Label, LabeledState, MeasurementPartition, OutcomeKey};

fn uniform(n: usize) -> LabeledState {
    LabeledState::from_real((1..=n as u16).map(|i| (Label::Index(i), 1.0)))
}

/// Query the uniform superposition, then fold indices into sum and pairs.
fn sum_round(psi: &LabeledState, n: usize) -> Vec<Step> {
    vec![
        Step::Prepare(Prep::fixed(psi)),
        Step::Query(IndexRule::IndexOnly),
        Step::gadget(&u_pair(n).forward, Binding::Identity),
    ]
}

/// Outputs 1 iff all `n` bits are equal, in `n - 1` queries: compare the
/// first two, and on equality drop the second.
pub fn build_equality(n: usize) -> Result<Arc<Plan>> {
    cached(format!("equality/{n}"), || {
        let root = if n <= 1 {
            Node::leaf(true)
        } else {
            let first_two = LabeledState::from_real([(Label::Index(1), 1.0), (Label::Index(2), 1.0)]);
            let sum = LabeledState::from_real([(Label::S, 1.0)]);
            let rest = build_equality(n - 1)?;
            let equal = Node::call(
                vec![Step::Uncompute(Prep::fixed(&sum))],
                &rest,
                Removal::Fixed(vec![2]),
                Vec::new(),
                LabelMap::Identity,
            );
            Node::new(
                sum_round(&first_two, 2),
                End::Measure {
                    partition: MeasurementPartition::new(Classifier::Complete),
                    children: vec![
                        (Pattern::Key(OutcomeKey::Label(Label::S)), equal),
                        (Pattern::AnyPair, Node::leaf(false)),
                        (Pattern::Any, Node::unreachable()),
                    ],
                },
            )
        };
        Ok(Plan::new("equality", Params::n(n), n.saturating_sub(1), Entry::Scratch, root))
    })
}

/// Outputs 1 iff `|x| = m/2`, in `m/2` queries for even `m`: each round
/// either finds `Σ x̂ != 0` or removes a pair with different bits.
pub fn build_balanced(m: usize) -> Result<Arc<Plan>> {
    cached(format!("balanced/{m}"), || {
        if m % 2 == 1 {
            return Ok(Plan::new("balanced", Params::n(m), 0, Entry::Scratch, Node::leaf(false)));
        }
        let root = if m == 0 {
            Node::leaf(true)
        } else {
            let rest = build_balanced(m - 2)?;
            let pair = Node::call(
                vec![Step::Uncompute(Prep::Outcome(PairTemplate::Pair))],
                &rest,
                Removal::OutcomePair,
                Vec::new(),
                LabelMap::Identity,
            );
            Node::new(
                sum_round(&uniform(m), m),
                End::Measure {
                    partition: MeasurementPartition::new(Classifier::Complete),
                    children: vec![
                        (Pattern::Key(OutcomeKey::Label(Label::S)), Node::leaf(false)),
                        (Pattern::AnyPair, pair),
                        (Pattern::Any, Node::unreachable()),
                    ],
                },
            )
        };
        Ok(Plan::new("balanced", Params::n(m), m / 2, Entry::Scratch, root))
    })
}

/// Outputs 1 iff `|x| = k`, in `max(k, n - k)` queries: pad to a balanced
/// instance on `2 max(k, n - k)` bits.
pub fn build_exact_k(n: usize, k: usize) -> Result<Arc<Plan>> {
    cached(format!("exact_k/{n}/{k}"), || {
        let params = Params { k: Some(k), ..Params::n(n) };
        if k > n {
            return Ok(Plan::new("exact_k", params, 0, Entry::Scratch, Node::leaf(false)));
        }
        let append = if k < n - k { vec![true; n - 2 * k] } else { vec![false; 2 * k - n] };
        let balanced = build_balanced(n + append.len())?;
        let root = Node::call(Vec::new(), &balanced, Removal::None, append, LabelMap::Identity);
        Ok(Plan::new("exact_k", params, k.max(n - k), Entry::Scratch, root))
    })
}

/// `x_1 ⊕ x_2` in one query.
pub fn build_xor() -> Result<Arc<Plan>> {
    cached("xor".into(), || {
        let first_two = LabeledState::from_real([(Label::Index(1), 1.0), (Label::Index(2), 1.0)]);
        let root = Node::new(
            sum_round(&first_two, 2),
            End::Measure {
                partition: MeasurementPartition::new(Classifier::Complete),
                children: vec![
                    (Pattern::Key(OutcomeKey::Label(Label::S)), Node::leaf(false)),
                    (Pattern::AnyPair, Node::leaf(true)),
                    (Pattern::Any, Node::unreachable()),
                ],
            },
        );
        Ok(Plan::new("xor", Params::n(2), 1, Entry::Scratch, root))
    })
}

/// Zero-query plan with a fixed output.
pub fn build_constant(n: usize, bit: bool) -> Result<Arc<Plan>> {
    cached(format!("constant/{n}/{bit}"), || {
        let params = Params { k: Some(bit as usize), ..Params::n(n) };
        Ok(Plan::new("constant", params, 0, Entry::Scratch, Node::leaf(bit)))
    })
}
