// SPDX-License-Identifier: Apache-2.0

//! Plan execution on one classical input.
//!
//! [`run`] follows every reachable branch. Each call into a sub-plan starts
//! a new frame: the mapped state is normalized, so identical sub-problems
//! reached along different branches share one memoized run, and a child's
//! masses are scaled back by the frame weight. [`trace`] instead keeps
//! amplitudes unnormalized so that they stay polynomials in the input.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gadgets::{oracle_apply, state_prep, OracleSpec};
use crate::plan::{Call, End, Entry, Node, Plan, Prep, Removal, Step};
use crate::state::{measure, Binding, Label, LabeledState, OutcomeKey};

/// Grid used to key memoized frames.
const MEMO_QUANTUM: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    /// Most queries along any reachable path.
    pub max_queries: usize,
    /// Probability of reaching an `Output(false)` / `Output(true)` leaf.
    pub mass: [f64; 2],
    /// Probability of reaching an unreachable leaf or losing amplitude at a
    /// call boundary.
    pub bad_mass: f64,
    /// Probability in branches below the reachability threshold.
    pub pruned_mass: f64,
    /// Largest norm change across a unitary step or query.
    pub norm_residual: f64,
}

impl Summary {
    fn absorb(&mut self, child: &Summary, scale: f64) {
        self.max_queries = self.max_queries.max(child.max_queries);
        self.mass[0] += scale * child.mass[0];
        self.mass[1] += scale * child.mass[1];
        self.bad_mass += scale * child.bad_mass;
        self.pruned_mass += scale * child.pruned_mass;
        self.norm_residual = self.norm_residual.max(child.norm_residual);
    }

    pub fn total(&self) -> f64 {
        self.mass[0] + self.mass[1] + self.bad_mass + self.pruned_mass
    }
}

#[derive(Debug)]
pub struct RunBranch {
    pub key: OutcomeKey,
    /// Probability relative to the enclosing frame.
    pub norm2: f64,
    /// `None` for branches below the threshold.
    pub node: Option<Arc<RunNode>>,
}

#[derive(Debug)]
pub enum RunEnd {
    Output(bool),
    Unreachable,
    Measured(Vec<RunBranch>),
    Call { child: Option<Arc<RunNode>>, scale: f64, stray: f64 },
}

/// Executed counterpart of a plan node.
#[derive(Debug)]
pub struct RunNode {
    /// Queries made by this node's own steps.
    pub queries: usize,
    /// Probability of reaching this node, relative to its frame.
    pub norm2: f64,
    pub end: RunEnd,
    pub summary: Summary,
}

impl RunNode {
    /// Largest gap between a measured node's probability and the sum of its
    /// branch probabilities, over the whole run tree. Frames are compared in
    /// their own units.
    pub fn max_norm_defect(&self) -> f64 {
        match &self.end {
            RunEnd::Output(_) | RunEnd::Unreachable => 0.0,
            RunEnd::Measured(branches) => {
                let sum: f64 = branches.iter().map(|b| b.norm2).sum();
                branches
                    .iter()
                    .filter_map(|b| b.node.as_ref())
                    .map(|c| c.max_norm_defect())
                    .fold((sum - self.norm2).abs(), f64::max)
            }
            RunEnd::Call { child, .. } => child.as_ref().map_or(0.0, |c| c.max_norm_defect()),
        }
    }
}

type MemoKey = (usize, Vec<bool>, Vec<(Label, i64, i64)>);

/// Per-thread cache of frame runs.
#[derive(Debug, Default)]
pub struct Memo {
    map: HashMap<MemoKey, Arc<RunNode>>,
}

impl Memo {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn signs(bits: &[bool]) -> Vec<f64> {
    bits.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect()
}

/// `(Σ x̂_i |S> + √γ Σ_{i<j} (x̂_i - x̂_j)|i,j>) / n`.
pub fn precomputed_state(bits: &[bool], gamma: f64) -> LabeledState {
    let s = signs(bits);
    let n = s.len();
    let scale = 1.0 / n.max(1) as f64;
    let mut pairs = vec![(Label::S, s.iter().sum::<f64>() * scale)];
    let rg = gamma.sqrt();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((Label::Pair(i as u16 + 1, j as u16 + 1), rg * (s[i] - s[j]) * scale));
        }
    }
    LabeledState::from_real(pairs)
}

/// Unnormalized entry state of a plan.
pub fn entry_state(plan: &Plan, bits: &[bool]) -> LabeledState {
    match plan.entry {
        Entry::Scratch => LabeledState::basis(Label::Scratch0, 1.0),
        Entry::Precomputed { gamma } => precomputed_state(bits, gamma),
    }
}

fn prep_state(prep: &Prep, outcome: Option<(u16, u16)>) -> Result<Arc<crate::gadgets::UnitaryPair>> {
    match prep {
        Prep::Fixed(pair) => Ok(Arc::clone(pair)),
        Prep::Outcome(template) => {
            let pair = outcome.ok_or_else(|| Error::Domain("pair template outside a pair outcome".into()))?;
            Ok(Arc::new(state_prep(&template.state(pair))?))
        }
    }
}

/// Applies the unitary steps and queries of one node. Returns the state
/// and the largest norm change.
fn apply_steps(
    steps: &[Step],
    spec: &OracleSpec,
    mut state: LabeledState,
    outcome: Option<(u16, u16)>,
) -> Result<(LabeledState, f64)> {
    let mut residual: f64 = 0.0;
    for step in steps {
        let before = state.squared_norm();
        state = match step {
            Step::Gadget { gadget, binding } => gadget.apply(&state, binding)?,
            Step::Query(rule) => oracle_apply(&state, spec, *rule)?,
            Step::Prepare(prep) => prep_state(prep, outcome)?.forward.apply(&state, &Binding::Identity)?,
            Step::Uncompute(prep) => prep_state(prep, outcome)?.inverse.apply(&state, &Binding::Identity)?,
        };
        residual = residual.max((state.squared_norm() - before).abs());
    }
    Ok((state, residual))
}

fn own_queries(node: &Node) -> usize {
    node.steps.iter().filter(|s| matches!(s, Step::Query(_))).count()
}

fn removed_indices(remove: &Removal, outcome: Option<(u16, u16)>) -> Result<Vec<u16>> {
    match remove {
        Removal::None => Ok(Vec::new()),
        Removal::OutcomePair => {
            let (i, j) = outcome.ok_or_else(|| Error::Domain("pair removal outside a pair outcome".into()))?;
            Ok(vec![i, j])
        }
        Removal::Fixed(v) => Ok(v.clone()),
    }
}

/// Input bits and state handed to a sub-plan, plus the norm that did not
/// map.
fn enter_call(
    call: &Call,
    bits: &[bool],
    state: &LabeledState,
    outcome: Option<(u16, u16)>,
) -> Result<(Vec<bool>, LabeledState, f64)> {
    let removed = removed_indices(&call.remove, outcome)?;
    for &r in &removed {
        if r == 0 || r as usize > bits.len() {
            return Err(Error::IndexOutOfRange { index: r as usize, live: bits.len() });
        }
    }
    let mut new_bits: Vec<bool> = (1..=bits.len() as u16)
        .filter(|i| !removed.contains(i))
        .map(|i| bits[i as usize - 1])
        .collect();
    new_bits.extend_from_slice(&call.append);
    if new_bits.len() != call.plan.n() {
        return Err(Error::ArityMismatch { expected: call.plan.n(), got: new_bits.len() });
    }
    let mut stray = 0.0;
    let mut mapped = Vec::with_capacity(state.len());
    for (label, amp) in state.iter() {
        match call.map.apply(label, &removed, outcome) {
            Some(l) => mapped.push((l, *amp)),
            None => stray += amp.norm_sqr(),
        }
    }
    Ok((new_bits, LabeledState::from_pairs(mapped), stray))
}

/// Scales to unit norm with the first sizable amplitude real positive.
fn normalize_frame(state: &LabeledState) -> (LabeledState, f64) {
    let norm2 = state.squared_norm();
    let max = state.iter().map(|(_, a)| a.norm()).fold(0.0, f64::max);
    let anchor = state
        .iter()
        .map(|(_, a)| *a)
        .find(|a| a.norm() >= 0.5 * max)
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = anchor.conj() / anchor.norm();
    (state.scaled(phase / norm2.sqrt()), norm2)
}

fn memo_key(plan: &Arc<Plan>, bits: &[bool], state: &LabeledState) -> MemoKey {
    let q = |v: f64| (v / MEMO_QUANTUM).round() as i64;
    (
        Arc::as_ptr(plan) as usize,
        bits.to_vec(),
        state.iter().map(|(l, a)| (*l, q(a.re), q(a.im))).collect(),
    )
}

struct Runner<'m> {
    eps_branch: f64,
    memo: Option<&'m mut Memo>,
}

impl Runner<'_> {
    fn frame(&mut self, plan: &Arc<Plan>, bits: &[bool], state: LabeledState) -> Result<Arc<RunNode>> {
        let key = self.memo.as_ref().map(|_| memo_key(plan, bits, &state));
        if let (Some(memo), Some(key)) = (self.memo.as_ref(), key.as_ref()) {
            if let Some(hit) = memo.map.get(key) {
                return Ok(Arc::clone(hit));
            }
        }
        let spec = OracleSpec::new(bits.to_vec());
        let node = self.node(&plan.root, &spec, state, None)?;
        if let (Some(memo), Some(key)) = (self.memo.as_mut(), key) {
            memo.map.insert(key, Arc::clone(&node));
        }
        Ok(node)
    }

    fn node(
        &mut self,
        node: &Node,
        spec: &OracleSpec,
        state: LabeledState,
        outcome: Option<(u16, u16)>,
    ) -> Result<Arc<RunNode>> {
        let norm2 = state.squared_norm();
        let queries = own_queries(node);
        let (state, residual) = apply_steps(&node.steps, spec, state, outcome)?;
        let mut summary = Summary { norm_residual: residual, ..Summary::default() };
        let end = match &node.end {
            End::Output(bit) => {
                summary.mass[*bit as usize] = state.squared_norm();
                RunEnd::Output(*bit)
            }
            End::Unreachable => {
                summary.bad_mass = state.squared_norm();
                RunEnd::Unreachable
            }
            End::Measure { partition, children } => {
                let mut out = Vec::new();
                for branch in measure(&state, partition, self.eps_branch)? {
                    let child = children.iter().find(|(p, _)| p.matches(&branch.key)).map(|(_, c)| c);
                    let run = match (branch.reachable, child) {
                        (false, _) => {
                            summary.pruned_mass += branch.norm2;
                            None
                        }
                        (true, None) => {
                            summary.bad_mass += branch.norm2;
                            None
                        }
                        (true, Some(child)) => {
                            let inner = branch.key.pair().or(outcome);
                            let run = self.node(child, spec, branch.state, inner)?;
                            summary.absorb(&run.summary, 1.0);
                            Some(run)
                        }
                    };
                    out.push(RunBranch { key: branch.key, norm2: branch.norm2, node: run });
                }
                RunEnd::Measured(out)
            }
            End::Call(call) => {
                let (bits, mapped, stray) = enter_call(call, &spec.bits, &state, outcome)?;
                summary.bad_mass += stray;
                let (child, scale) = if mapped.squared_norm() < self.eps_branch * 1e-3 {
                    summary.pruned_mass += mapped.squared_norm();
                    (None, mapped.squared_norm())
                } else {
                    let (normalized, scale) = normalize_frame(&mapped);
                    let run = self.frame(&call.plan, &bits, normalized)?;
                    summary.absorb(&run.summary, scale);
                    (Some(run), scale)
                };
                RunEnd::Call { child, scale, stray }
            }
        };
        summary.max_queries += queries;
        Ok(Arc::new(RunNode { queries, norm2, end, summary }))
    }
}

/// Result of running a plan on one input.
#[derive(Debug)]
pub struct RunResult {
    /// Squared norm of the entry state before normalization.
    pub entry_norm2: f64,
    /// `None` when the entry state is zero.
    pub root: Option<Arc<RunNode>>,
}

impl RunResult {
    pub fn summary(&self) -> Summary {
        self.root.as_ref().map(|r| r.summary).unwrap_or_default()
    }

    /// Probability of output 1.
    pub fn acceptance(&self) -> f64 {
        self.summary().mass[1]
    }
}

/// Runs `plan` on `bits` from its normalized entry state, following all
/// branches of probability at least `eps_branch` within their frame.
pub fn run(plan: &Arc<Plan>, bits: &[bool], eps_branch: f64, memo: Option<&mut Memo>) -> Result<RunResult> {
    if bits.len() != plan.n() {
        return Err(Error::ArityMismatch { expected: plan.n(), got: bits.len() });
    }
    let entry = entry_state(plan, bits);
    let entry_norm2 = entry.squared_norm();
    if entry_norm2 == 0.0 {
        return Ok(RunResult { entry_norm2, root: None });
    }
    let (state, _) = normalize_frame(&entry);
    let mut runner = Runner { eps_branch, memo };
    let root = runner.frame(plan, bits, state)?;
    Ok(RunResult { entry_norm2, root: Some(root) })
}

/// Which measurement outcomes a trace follows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chooser {
    /// Every non-pair outcome, and for pair outcomes only the pair of the
    /// two highest live indices.
    Canonical,
    /// Every outcome.
    All,
    /// Exactly this sequence of outcome keys.
    Path(Vec<OutcomeKey>),
}

impl Chooser {
    fn admits(&self, key: &OutcomeKey, depth: usize, live: usize) -> bool {
        match self {
            Chooser::Canonical => match key.pair() {
                Some(p) => live >= 2 && p == (live as u16 - 1, live as u16),
                None => true,
            },
            Chooser::All => true,
            Chooser::Path(keys) => keys.get(depth) == Some(key),
        }
    }
}

/// State at one leaf reached by a trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub path: Vec<OutcomeKey>,
    /// Queries made on the way, including all enclosing frames.
    pub queries: usize,
    /// Live variables at the leaf.
    pub live: usize,
    /// Unnormalized projected state at the leaf.
    pub state: LabeledState,
    /// `None` for unreachable leaves.
    pub output: Option<bool>,
}

struct Tracer<'c> {
    chooser: &'c Chooser,
    records: Vec<TraceRecord>,
}

impl Tracer<'_> {
    fn node(
        &mut self,
        node: &Node,
        bits: &[bool],
        state: LabeledState,
        outcome: Option<(u16, u16)>,
        path: &mut Vec<OutcomeKey>,
        queries: usize,
    ) -> Result<()> {
        let spec = OracleSpec::new(bits.to_vec());
        let (state, _) = apply_steps(&node.steps, &spec, state, outcome)?;
        let queries = queries + own_queries(node);
        match &node.end {
            End::Output(bit) => self.leaf(path, queries, bits.len(), state, Some(*bit)),
            End::Unreachable => self.leaf(path, queries, bits.len(), state, None),
            End::Measure { partition, children } => {
                for branch in measure(&state, partition, 0.0)? {
                    if !self.chooser.admits(&branch.key, path.len(), bits.len()) {
                        continue;
                    }
                    let Some((_, child)) = children.iter().find(|(p, _)| p.matches(&branch.key)) else {
                        continue;
                    };
                    path.push(branch.key);
                    let inner = branch.key.pair().or(outcome);
                    self.node(child, bits, branch.state, inner, path, queries)?;
                    path.pop();
                }
            }
            End::Call(call) => {
                let (new_bits, mapped, _) = enter_call(call, bits, &state, outcome)?;
                if !mapped.is_empty() {
                    self.node(&call.plan.root, &new_bits, mapped, None, path, queries)?;
                }
            }
        }
        Ok(())
    }

    fn leaf(&mut self, path: &[OutcomeKey], queries: usize, live: usize, state: LabeledState, output: Option<bool>) {
        self.records.push(TraceRecord { path: path.to_vec(), queries, live, state, output });
    }
}

/// Runs `plan` on `bits` without normalization or pruning, following the
/// outcomes `chooser` admits, and records every leaf state.
pub fn trace(plan: &Arc<Plan>, bits: &[bool], chooser: &Chooser) -> Result<Vec<TraceRecord>> {
    if bits.len() != plan.n() {
        return Err(Error::ArityMismatch { expected: plan.n(), got: bits.len() });
    }
    let mut tracer = Tracer { chooser, records: Vec::new() };
    let entry = entry_state(plan, bits);
    tracer.node(&plan.root, bits, entry, None, &mut Vec::new(), 0)?;
    Ok(tracer.records)
}
