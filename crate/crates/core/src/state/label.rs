// SPDX-License-Identifier: Apache-2.0

//! Structured basis labels.
//!
//! Every basis vector the algorithms touch is named by a [`Label`]. Indices
//! are 1-based positions into the live-variable set of the current
//! (sub)problem. The derived `Ord` is the canonical order used for
//! completion and reporting.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// Data-register part of a label: the sum state, an index, or a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Base {
    S,
    Index(u16),
    Pair(u16, u16),
}

/// Leading register of a two-register label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Prefix {
    Ancilla(u8),
    Pair(u16, u16),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    /// The no-query state `|0>`.
    Scratch0,
    S,
    Index(u16),
    Pair(u16, u16),
    /// Local basis of a rotation gadget.
    Side(Side),
    Tagged(Base, Side),
    Quad(u16, u16, u16, u16),
    Ancilla(u8),
    Composite(Prefix, Base),
}

impl From<Base> for Label {
    fn from(base: Base) -> Self {
        match base {
            Base::S => Label::S,
            Base::Index(i) => Label::Index(i),
            Base::Pair(i, j) => Label::Pair(i, j),
        }
    }
}

impl Base {
    pub fn from_label(label: Label) -> Option<Base> {
        match label {
            Label::S => Some(Base::S),
            Label::Index(i) => Some(Base::Index(i)),
            Label::Pair(i, j) => Some(Base::Pair(i, j)),
            _ => None,
        }
    }
}

/// Position of `idx` once the indices in `removed` are deleted and the rest
/// renumbered order-preservingly. `None` if `idx` itself was removed.
pub fn renumber_index(idx: u16, removed: &[u16]) -> Option<u16> {
    if removed.contains(&idx) {
        return None;
    }
    let below = removed.iter().filter(|&&r| r < idx).count() as u16;
    Some(idx - below)
}

/// Inverse of [`renumber_index`]: the original index of the `local`-th
/// surviving variable.
pub fn original_index(local: u16, removed: &[u16]) -> u16 {
    let mut candidate = local;
    let mut sorted: Vec<u16> = removed.to_vec();
    sorted.sort_unstable();
    for r in sorted {
        if r <= candidate {
            candidate += 1;
        }
    }
    candidate
}

impl Label {
    pub fn pair(i: u16, j: u16) -> Label {
        debug_assert!(i < j, "pair labels need i < j");
        Label::Pair(i, j)
    }

    /// Checks the structural invariants (ordered pairs, disjoint quads,
    /// 1-based indices).
    pub fn is_well_formed(&self) -> bool {
        fn base_ok(b: &Base) -> bool {
            match *b {
                Base::S => true,
                Base::Index(i) => i >= 1,
                Base::Pair(i, j) => i >= 1 && i < j,
            }
        }
        match *self {
            Label::Index(i) => i >= 1,
            Label::Pair(i, j) => i >= 1 && i < j,
            Label::Tagged(b, _) => base_ok(&b) && b != Base::S,
            Label::Quad(i, j, k, l) => {
                i >= 1 && k >= 1 && i < j && k < l && i != k && i != l && j != k && j != l
            }
            Label::Composite(Prefix::Pair(i, j), b) => i >= 1 && i < j && base_ok(&b),
            Label::Composite(Prefix::Ancilla(_), b) => base_ok(&b),
            _ => true,
        }
    }

    /// The leading pair carried by this label, if any.
    pub fn leading_pair(&self) -> Option<(u16, u16)> {
        match *self {
            Label::Pair(i, j) | Label::Quad(i, j, _, _) => Some((i, j)),
            Label::Tagged(Base::Pair(i, j), _) => Some((i, j)),
            Label::Composite(Prefix::Pair(i, j), _) => Some((i, j)),
            Label::Composite(Prefix::Ancilla(_), Base::Pair(i, j)) => Some((i, j)),
            _ => None,
        }
    }

    /// Renumbers every variable index after deleting `removed`. Returns
    /// `None` if the label mentions a removed variable.
    pub fn renumber(&self, removed: &[u16]) -> Option<Label> {
        if removed.is_empty() {
            return Some(*self);
        }
        let r = |i: u16| renumber_index(i, removed);
        let base = |b: Base| -> Option<Base> {
            Some(match b {
                Base::S => Base::S,
                Base::Index(i) => Base::Index(r(i)?),
                Base::Pair(i, j) => Base::Pair(r(i)?, r(j)?),
            })
        };
        Some(match *self {
            Label::Index(i) => Label::Index(r(i)?),
            Label::Pair(i, j) => Label::Pair(r(i)?, r(j)?),
            Label::Tagged(b, s) => Label::Tagged(base(b)?, s),
            Label::Quad(i, j, k, l) => Label::Quad(r(i)?, r(j)?, r(k)?, r(l)?),
            Label::Composite(Prefix::Pair(i, j), b) => {
                Label::Composite(Prefix::Pair(r(i)?, r(j)?), base(b)?)
            }
            Label::Composite(p, b) => Label::Composite(p, base(b)?),
            other => other,
        })
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::S => write!(f, "S"),
            Base::Index(i) => write!(f, "{i}"),
            Base::Pair(i, j) => write!(f, "{i},{j}"),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Scratch0 => write!(f, "|0>"),
            Label::S => write!(f, "|S>"),
            Label::Index(i) => write!(f, "|{i}>"),
            Label::Pair(i, j) => write!(f, "|{i},{j}>"),
            Label::Side(s) => write!(f, "|{s:?}>"),
            Label::Tagged(b, s) => write!(f, "|{b},{s:?}>"),
            Label::Quad(i, j, k, l) => write!(f, "|{i},{j},{k},{l}>"),
            Label::Ancilla(a) => write!(f, "|a{a}>"),
            Label::Composite(Prefix::Ancilla(a), b) => write!(f, "|a{a}>|{b}>"),
            Label::Composite(Prefix::Pair(i, j), b) => write!(f, "|{i},{j}>|{b}>"),
        }
    }
}
