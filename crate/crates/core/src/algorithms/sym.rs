// SPDX-License-Identifier: Apache-2.0

//! Symmetric functions whose ones sit within `g` of the middle weight.
//!
//! Stage 1 tracks a working vector over weights of the padded input, with
//! each entry 0, 1, or ruled out. Elimination steps centered between two
//! candidate weights either rule one of them out or remove two different
//! bits, which drops the first and last entries. Padding with a zero
//! appends an entry, padding with a one prepends one. Once a single
//! candidate weight remains, Stage 2 runs the single-weight algorithm.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::basic::build_exact_k;
use super::cached;
use super::general::{general_step_node, uw_step_node, Next, StepChildren};
use crate::error::{Error, Result};
use crate::plan::{Entry, LabelMap, Node, Params, Plan, Removal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymStrategy {
    /// Symmetric steps while the center sweeps right over `4g + 1` half
    /// positions after `2g` one-paddings.
    TwoSidedCenterSweep,
    /// Asymmetric steps from the unpadded center, padding toward the side
    /// that still has candidates.
    OutwardSweep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymSpec {
    /// `a[i]` is the value on inputs of weight `i`.
    pub a: Vec<bool>,
    pub g: usize,
    pub strategy: SymStrategy,
}

impl SymSpec {
    pub fn new(a: Vec<bool>, g: usize, strategy: SymStrategy) -> Self {
        Self { a, g, strategy }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(a: &str, g: usize, strategy: SymStrategy) -> Result<Self> {
        let bits = a
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InconsistentSpec(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(Self::new(bits, g, strategy))
    }

    pub fn n(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::InconsistentSpec("value vector is empty".into()));
        }
        let n = self.n();
        // |i - n/2| > g  <=>  |2i - n| > 2g
        if let Some(i) = (0..=n).find(|&i| self.a[i] && (2 * i).abs_diff(n) > 2 * self.g) {
            return Err(Error::InconsistentSpec(format!("weight {i} is a one farther than g = {} from n/2", self.g)));
        }
        Ok(())
    }

    /// Query bound of the strategy, rounded down.
    pub fn bound(&self) -> usize {
        match self.strategy {
            SymStrategy::TwoSidedCenterSweep => self.n() / 2 + 7 * self.g + 1,
            SymStrategy::OutwardSweep => self.n() / 2 + 5 * self.g,
        }
    }

    pub fn bits_string(&self) -> String {
        self.a.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Cell {
    Zero,
    One,
    Out,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Cells(Vec<Cell>);

impl fmt::Display for Cells {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            let ch = match c {
                Cell::Zero => '0',
                Cell::One => '1',
                Cell::Out => '*',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl Cells {
    fn size(&self) -> usize {
        self.0.len() - 1
    }

    fn ones(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == Cell::One).collect()
    }

    fn shrink(&self) -> Cells {
        Cells(self.0[1..self.0.len() - 1].to_vec())
    }

    fn rule_out(&self, i: usize) -> Cells {
        let mut c = self.0.clone();
        c[i] = Cell::Out;
        Cells(c)
    }

    fn pad_zero(&self) -> Cells {
        let mut c = self.0.clone();
        c.push(Cell::Zero);
        Cells(c)
    }

    fn pad_one(&self) -> Cells {
        let mut c = vec![Cell::Zero];
        c.extend_from_slice(&self.0);
        Cells(c)
    }

    /// Constant value, if no zero or no one is left.
    fn settled(&self) -> Option<bool> {
        if !self.0.contains(&Cell::Zero) {
            Some(true)
        } else if !self.0.contains(&Cell::One) {
            Some(false)
        } else {
            None
        }
    }
}

fn stage_plan(cells: &Cells, root: Arc<Node>) -> Arc<Plan> {
    let params = Params { a: Some(cells.to_string()), ..Params::n(cells.size()) };
    let depth = root.depth();
    Plan::new("sym-stage", params, depth, Entry::Scratch, root)
}

fn pad_call(next: Arc<Plan>, bit: bool) -> Arc<Node> {
    Node::call(Vec::new(), &next, Removal::None, vec![bit], LabelMap::Identity)
}

/// Stage 2, or an early exit.
fn finish(cells: &Cells) -> Result<Option<Arc<Plan>>> {
    if let Some(bit) = cells.settled() {
        return cached(format!("sym/leaf/{cells}"), || Ok(stage_plan(cells, Node::leaf(bit)))).map(Some);
    }
    match cells.ones().as_slice() {
        [k] => build_exact_k(cells.size(), *k).map(Some),
        _ => Ok(None),
    }
}

fn center_sweep(cells: &Cells, m2: usize, m2_max: usize) -> Result<Arc<Plan>> {
    if let Some(done) = finish(cells)? {
        return Ok(done);
    }
    cached(format!("sym/center/{cells}/{m2}/{m2_max}"), || {
        let n = cells.size();
        let ones = cells.ones();
        let pair = ones
            .iter()
            .flat_map(|&i| ones.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| i < j && i + j == n)
            .max_by_key(|&(i, j)| j - i);
        let root = match pair {
            Some((i, j)) => {
                let children = StepChildren {
                    a0: Next::plan(center_sweep(&cells.rule_out(j), m2, m2_max)?),
                    a1: Next::plan(center_sweep(&cells.rule_out(i), m2, m2_max)?),
                    pair: Next::plan(center_sweep(&cells.shrink(), m2, m2_max)?),
                };
                general_step_node(n, j - i, children)
            }
            None => {
                let padded = cells.pad_zero();
                let next = if m2 < m2_max {
                    center_sweep(&padded, m2 + 1, m2_max)?
                } else {
                    finish(&padded)?.ok_or_else(|| {
                        Error::InconsistentSpec(format!("stage 1 ended with several candidate weights: {padded}"))
                    })?
                };
                pad_call(next, false)
            }
        };
        Ok(stage_plan(cells, root))
    })
}

fn outward_sweep(cells: &Cells) -> Result<Arc<Plan>> {
    if let Some(done) = finish(cells)? {
        return Ok(done);
    }
    cached(format!("sym/outward/{cells}"), || {
        let n = cells.size();
        let ones = cells.ones();
        let left = ones.iter().copied().filter(|&i| 2 * i < n).min();
        let right = ones.iter().copied().filter(|&j| 2 * j > n).max();
        let root = match (left, right) {
            (Some(i), Some(j)) => {
                let children = StepChildren {
                    a0: Next::plan(outward_sweep(&cells.rule_out(i))?),
                    a1: Next::plan(outward_sweep(&cells.rule_out(j))?),
                    pair: Next::plan(outward_sweep(&cells.shrink())?),
                };
                uw_step_node(n, n - 2 * i, 2 * j - n, children)?
            }
            (None, _) => pad_call(outward_sweep(&cells.pad_zero())?, false),
            (Some(_), None) => pad_call(outward_sweep(&cells.pad_one())?, true),
        };
        Ok(stage_plan(cells, root))
    })
}

/// Two-stage plan for `spec`.
pub fn build_sym(spec: &SymSpec) -> Result<Arc<Plan>> {
    spec.validate()?;
    let n = spec.n();
    let initial = Cells(spec.a.iter().map(|&b| if b { Cell::One } else { Cell::Zero }).collect());
    let params = Params { a: Some(spec.bits_string()), g: Some(spec.g), ..Params::n(n) };
    let root = match (finish(&initial)?, spec.strategy) {
        (Some(done), _) => Node::call(Vec::new(), &done, Removal::None, Vec::new(), LabelMap::Identity),
        (None, SymStrategy::TwoSidedCenterSweep) => {
            let mut padded = initial.clone();
            for _ in 0..2 * spec.g {
                padded = padded.pad_one();
            }
            let first = center_sweep(&padded, 0, 4 * spec.g)?;
            Node::call(Vec::new(), &first, Removal::None, vec![true; 2 * spec.g], LabelMap::Identity)
        }
        (None, SymStrategy::OutwardSweep) => {
            let first = outward_sweep(&initial)?;
            Node::call(Vec::new(), &first, Removal::None, Vec::new(), LabelMap::Identity)
        }
    };
    Ok(Plan::new("sym", params, spec.bound(), Entry::Scratch, root))
}
