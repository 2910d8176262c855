// SPDX-License-Identifier: Apache-2.0

//! Concrete gadgets: the three-level rotation `R_α`, the sum/difference map
//! `U_n`, the ancilla rotation `Q`, state preparation, and the oracle.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Base, IsometryGadget, Label, LabeledState, Side};

/// A completed gadget together with its inverse.
#[derive(Debug, Clone)]
pub struct UnitaryPair {
    pub forward: Arc<IsometryGadget>,
    pub inverse: Arc<IsometryGadget>,
}

impl UnitaryPair {
    pub fn from_partial(gadget: IsometryGadget) -> Result<Self> {
        let forward = gadget.complete()?;
        let inverse = forward.inverse()?;
        Ok(Self { forward: Arc::new(forward), inverse: Arc::new(inverse) })
    }
}

/// `R_α|0> = sin α |L> + cos α |R>`, completed over `{|0>, |L>, |R>}`.
pub fn r_rotation(alpha: f64) -> IsometryGadget {
    rotation_sc(alpha.sin(), alpha.cos())
}

/// `R_α` given `(sin α, cos α)` directly, which avoids a round trip through
/// trigonometric functions. The pair is normalized first.
pub fn rotation_sc(sin: f64, cos: f64) -> IsometryGadget {
    let norm = sin.hypot(cos);
    let column = LabeledState::from_real([
        (Label::Side(Side::L), sin / norm),
        (Label::Side(Side::R), cos / norm),
    ]);
    let sides = [Label::Side(Side::L), Label::Side(Side::R)];
    IsometryGadget::with_space("R", vec![(Label::Scratch0, column)], &sides)
        .and_then(|g| g.complete())
        .expect("a single normalized column completes")
}

/// The `n` specified columns of `U_n`:
/// `U_n|i> = (|S> - Σ_{j<i}|j,i> + Σ_{j>i}|i,j>) / √n`.
pub fn u_gadget(n: usize) -> IsometryGadget {
    assert!(n >= 1, "U_n needs n >= 1");
    let scale = 1.0 / (n as f64).sqrt();
    let columns = (1..=n as u16)
        .map(|i| {
            let mut entries = vec![(Label::S, scale)];
            for j in 1..i {
                entries.push((Label::Pair(j, i), -scale));
            }
            for j in i + 1..=n as u16 {
                entries.push((Label::Pair(i, j), scale));
            }
            (Label::Index(i), LabeledState::from_real(entries))
        })
        .collect();
    IsometryGadget::new(format!("U{n}"), columns).expect("U_n columns are orthonormal")
}

/// Completed `U_n` and its inverse, built once per `n`.
pub fn u_pair(n: usize) -> Arc<UnitaryPair> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<UnitaryPair>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&n) {
        return Arc::clone(hit);
    }
    let pair = Arc::new(UnitaryPair::from_partial(u_gadget(n)).expect("U_n completes"));
    cache
        .lock()
        .expect("cache lock")
        .entry(n)
        .or_insert(pair)
        .clone()
}

/// `Q = [[√u, -√w], [√w, √u]] / √(u+w)` on the ancilla labels.
pub fn q_rotation(u: f64, w: f64) -> Result<IsometryGadget> {
    if !(u > 0.0 && w > 0.0) {
        return Err(Error::Domain(format!("Q needs u > 0 and w > 0, got u = {u}, w = {w}")));
    }
    let s = (u + w).sqrt();
    let (su, sw) = (u.sqrt() / s, w.sqrt() / s);
    let columns = vec![
        (Label::Ancilla(0), LabeledState::from_real([(Label::Ancilla(0), su), (Label::Ancilla(1), sw)])),
        (Label::Ancilla(1), LabeledState::from_real([(Label::Ancilla(0), -sw), (Label::Ancilla(1), su)])),
    ];
    IsometryGadget::new("Q", columns)
}

/// Hadamard on the ancilla, obtained from `U_2` by relabeling
/// `|1>, |S> -> |a0>` and `|2>, |1,2> -> |a1>`.
pub fn hadamard() -> IsometryGadget {
    let relabel = |l: &Label| match *l {
        Label::Index(1) | Label::S => Label::Ancilla(0),
        Label::Index(2) | Label::Pair(1, 2) => Label::Ancilla(1),
        other => unreachable!("U_2 has no label {other:?}"),
    };
    let u2 = u_gadget(2);
    let columns = u2
        .inputs()
        .iter()
        .map(|input| {
            let col = u2.column(input).expect("specified");
            (relabel(input), LabeledState::from_pairs(col.iter().map(|(l, a)| (relabel(l), *a))))
        })
        .collect();
    IsometryGadget::new("H", columns).expect("Hadamard is unitary")
}

/// Completed map taking `|0>` to `psi / |psi|`.
pub fn state_prep(psi: &LabeledState) -> Result<UnitaryPair> {
    let norm = psi.squared_norm().sqrt();
    if norm == 0.0 {
        return Err(Error::Domain("cannot prepare the zero state".into()));
    }
    let column = psi.scaled(1.0 / norm);
    UnitaryPair::from_partial(IsometryGadget::new("prep", vec![(Label::Scratch0, column)])?)
}

/// Input bits for one run. `x̂_i = (-1)^{x_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSpec {
    /// `bits[i - 1]` is `x_i`.
    pub bits: Vec<bool>,
    /// 1-based indices whose values come from padding.
    pub padded: BTreeSet<usize>,
}

impl OracleSpec {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits, padded: BTreeSet::new() }
    }

    pub fn live(&self) -> usize {
        self.bits.len()
    }

    pub fn sign(&self, index: usize) -> Result<f64> {
        if index == 0 || index > self.bits.len() {
            return Err(Error::IndexOutOfRange { index, live: self.bits.len() });
        }
        Ok(if self.bits[index - 1] { -1.0 } else { 1.0 })
    }
}

/// Which part of a label names the queried variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexRule {
    /// The last index in the register: `|i>`, `|i,j>|k>`, `|a>|k>`.
    Trailing,
    /// Only bare `|i>` labels are queried.
    IndexOnly,
}

impl IndexRule {
    pub fn extract(&self, label: &Label) -> Option<u16> {
        match (*self, *label) {
            (_, Label::Index(i)) => Some(i),
            (IndexRule::Trailing, Label::Composite(_, Base::Index(k))) => Some(k),
            _ => None,
        }
    }
}

/// Multiplies each amplitude by `x̂_i` for the index the rule extracts.
/// Labels without an index act as the no-query state and are left alone.
pub fn oracle_apply(state: &LabeledState, spec: &OracleSpec, rule: IndexRule) -> Result<LabeledState> {
    let mut out = Vec::with_capacity(state.len());
    for (label, amp) in state.iter() {
        let sign = match rule.extract(label) {
            Some(i) => spec.sign(i as usize)?,
            None => 1.0,
        };
        out.push((*label, amp * sign));
    }
    Ok(LabeledState::from_pairs(out))
}
