// SPDX-License-Identifier: Apache-2.0

//! Adaptive branching programs: unitary steps, queries, measurements, and
//! calls into sub-plans on fewer (or padded) variables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gadgets::{state_prep, IndexRule, UnitaryPair};
use crate::state::{Base, Binding, IsometryGadget, Label, LabeledState, MeasurementPartition, OutcomeKey, Prefix, Side};

/// Parameters a plan was built for. Unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
}

impl Params {
    pub fn n(n: usize) -> Self {
        Self { n, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanMeta {
    pub family: String,
    pub params: Params,
    pub claimed_queries: usize,
}

/// State a plan starts from when run on its own.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Entry {
    /// `|0>` with amplitude 1.
    Scratch,
    /// `(Σ x̂_i |S> + √γ Σ_{i<j} (x̂_i - x̂_j)|i,j>) / n`.
    Precomputed { gamma: f64 },
}

#[derive(Debug)]
pub struct Plan {
    pub meta: PlanMeta,
    pub entry: Entry,
    pub root: Arc<Node>,
}

impl Plan {
    pub fn new(family: impl Into<String>, params: Params, claimed_queries: usize, entry: Entry, root: Arc<Node>) -> Arc<Self> {
        Arc::new(Self {
            meta: PlanMeta { family: family.into(), params, claimed_queries },
            entry,
            root,
        })
    }

    pub fn n(&self) -> usize {
        self.meta.params.n
    }

    pub fn claimed_queries(&self) -> usize {
        self.meta.claimed_queries
    }

    /// Longest query count along any structural path, ignoring amplitudes.
    pub fn structural_depth(&self) -> usize {
        self.root.depth
    }
}

/// State preparation target.
#[derive(Debug, Clone)]
pub enum Prep {
    Fixed(Arc<UnitaryPair>),
    /// A state built from the pair of the enclosing measurement outcome.
    Outcome(PairTemplate),
}

impl Prep {
    pub fn fixed(psi: &LabeledState) -> Self {
        Prep::Fixed(Arc::new(state_prep(psi).expect("nonzero preparation target")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairTemplate {
    /// `|i,j>`
    Pair,
    /// `|i,j,R>`
    TaggedR,
    /// `(|a0>|i,j> - |a1>|i,j>) / √2`
    AncillaDiff,
    /// `|a1>|i,j>`
    AncillaOne,
}

impl PairTemplate {
    pub fn state(&self, (i, j): (u16, u16)) -> LabeledState {
        let p = Base::Pair(i, j);
        match self {
            PairTemplate::Pair => LabeledState::from_real([(Label::Pair(i, j), 1.0)]),
            PairTemplate::TaggedR => LabeledState::from_real([(Label::Tagged(p, Side::R), 1.0)]),
            PairTemplate::AncillaDiff => LabeledState::from_real([
                (Label::Composite(Prefix::Ancilla(0), p), std::f64::consts::FRAC_1_SQRT_2),
                (Label::Composite(Prefix::Ancilla(1), p), -std::f64::consts::FRAC_1_SQRT_2),
            ]),
            PairTemplate::AncillaOne => LabeledState::from_real([(Label::Composite(Prefix::Ancilla(1), p), 1.0)]),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Step {
    Gadget { gadget: Arc<IsometryGadget>, binding: Binding },
    Query(IndexRule),
    /// Maps `|0>` to the target.
    Prepare(Prep),
    /// Maps the target back to `|0>`.
    Uncompute(Prep),
}

impl Step {
    pub fn gadget(gadget: &Arc<IsometryGadget>, binding: Binding) -> Self {
        Step::Gadget { gadget: Arc::clone(gadget), binding }
    }
}

/// Selects which child handles a measurement outcome. First match wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Key(OutcomeKey),
    AnyPair,
    AnyQuad,
    Residual,
    Any,
}

impl Pattern {
    pub fn matches(&self, key: &OutcomeKey) -> bool {
        match (self, key) {
            (Pattern::Key(k), key) => k == key,
            (Pattern::AnyPair, OutcomeKey::Pair(..)) => true,
            (Pattern::AnyQuad, OutcomeKey::Label(Label::Quad(..))) => true,
            (Pattern::Residual, OutcomeKey::Residual) => true,
            (Pattern::Any, _) => true,
            _ => false,
        }
    }
}

/// Which variables a call drops before entering the sub-plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Removal {
    None,
    /// The two variables of the enclosing pair outcome.
    OutcomePair,
    Fixed(Vec<u16>),
}

/// How state labels are carried into a sub-plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMap {
    /// Renumber indices after removal.
    Identity,
    /// `|i,j> -> |S>` and `|i,j,u,v> -> |u,v>` for the outcome pair `{i,j}`.
    CollapsePair,
    /// `|i,j,side> -> |i,j>`.
    Untag(Side),
}

impl LabelMap {
    /// `None` if the label has no image (it then counts as stray mass).
    pub fn apply(&self, label: &Label, removed: &[u16], outcome: Option<(u16, u16)>) -> Option<Label> {
        match *self {
            LabelMap::Identity => label.renumber(removed),
            LabelMap::CollapsePair => {
                let (i, j) = outcome?;
                match *label {
                    Label::Pair(a, b) if (a, b) == (i, j) => Some(Label::S),
                    Label::Quad(a, b, u, v) if (a, b) == (i, j) => Label::Pair(u, v).renumber(removed),
                    _ => None,
                }
            }
            LabelMap::Untag(side) => match *label {
                Label::Tagged(Base::Pair(i, j), s) if s == side => Label::Pair(i, j).renumber(removed),
                Label::Tagged(..) => None,
                other => other.renumber(removed),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Call {
    pub plan: Arc<Plan>,
    pub remove: Removal,
    /// Constant bits appended after the surviving variables.
    pub append: Vec<bool>,
    pub map: LabelMap,
}

#[derive(Debug, Clone)]
pub enum End {
    Output(bool),
    /// Outcome that carries no amplitude for a correct algorithm.
    Unreachable,
    Measure { partition: MeasurementPartition, children: Vec<(Pattern, Arc<Node>)> },
    Call(Call),
}

#[derive(Debug)]
pub struct Node {
    pub steps: Vec<Step>,
    pub end: End,
    depth: usize,
}

impl Node {
    pub fn new(steps: Vec<Step>, end: End) -> Arc<Self> {
        let own = steps.iter().filter(|s| matches!(s, Step::Query(_))).count();
        let below = match &end {
            End::Output(_) | End::Unreachable => 0,
            End::Measure { children, .. } => children.iter().map(|(_, c)| c.depth).max().unwrap_or(0),
            End::Call(call) => call.plan.structural_depth(),
        };
        Arc::new(Self { steps, end, depth: own + below })
    }

    pub fn leaf(bit: bool) -> Arc<Self> {
        Self::new(Vec::new(), End::Output(bit))
    }

    pub fn unreachable() -> Arc<Self> {
        Self::new(Vec::new(), End::Unreachable)
    }

    pub fn call(steps: Vec<Step>, plan: &Arc<Plan>, remove: Removal, append: Vec<bool>, map: LabelMap) -> Arc<Self> {
        Self::new(steps, End::Call(Call { plan: Arc::clone(plan), remove, append, map }))
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}) claimed {} queries", self.meta.family, self.n(), self.meta.claimed_queries)
    }
}
