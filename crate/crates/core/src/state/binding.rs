// SPDX-License-Identifier: Apache-2.0

//! Label-rewriting rules that embed a gadget's local label space into the
//! global state. A binding splits a global label into (local label, context)
//! and joins them back; labels outside its domain are left untouched.

use serde::{Deserialize, Serialize};

use super::label::{original_index, renumber_index, Base, Label, Prefix, Side};

/// Context placeholder for bindings that need none.
const NO_CONTEXT: Label = Label::Scratch0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Binding {
    Identity,
    /// Three-level rotation per pair: `|i,j>` is the local `|0>`, and
    /// `|i,j,side>` the local `|side>`.
    PerPair,
    /// `U_n` with its difference outputs tagged: local `|i,j>` lives at
    /// `|i,j,side>`; `|S>` and `|i>` map to themselves.
    Substitute(Side),
    /// `U_{n-2}` on the variables outside each pair `{i,j}`: the local sum
    /// state is `|i,j,sum>`, local pairs are `|i,j,u,v>`, and local indices
    /// are `|i,j>|k>`. Inner indices are stored in the parent numbering.
    PairSubregister { sum: Side },
    /// Acts on the data register when the ancilla holds `ancilla`.
    Controlled { ancilla: u8 },
    /// Acts on the ancilla register, optionally only next to one data label.
    AncillaRegister { only_data: Option<Base> },
}

impl Binding {
    /// Global label to (local label, context), or `None` if untouched.
    pub fn split(&self, label: &Label) -> Option<(Label, Label)> {
        match *self {
            Binding::Identity => Some((*label, NO_CONTEXT)),
            Binding::PerPair => match *label {
                Label::Pair(i, j) => Some((Label::Scratch0, Label::Pair(i, j))),
                Label::Tagged(Base::Pair(i, j), s) => Some((Label::Side(s), Label::Pair(i, j))),
                _ => None,
            },
            Binding::Substitute(side) => match *label {
                Label::S | Label::Index(_) => Some((*label, NO_CONTEXT)),
                Label::Tagged(Base::Pair(i, j), s) if s == side => {
                    Some((Label::Pair(i, j), NO_CONTEXT))
                }
                _ => None,
            },
            Binding::PairSubregister { sum } => {
                let ctx_of = |i: u16, j: u16| Label::Pair(i, j);
                match *label {
                    Label::Tagged(Base::Pair(i, j), s) if s == sum => Some((Label::S, ctx_of(i, j))),
                    Label::Quad(i, j, u, v) => {
                        let removed = [i, j];
                        let ru = renumber_index(u, &removed)?;
                        let rv = renumber_index(v, &removed)?;
                        Some((Label::Pair(ru, rv), ctx_of(i, j)))
                    }
                    Label::Composite(Prefix::Pair(i, j), Base::Index(k)) => {
                        let rk = renumber_index(k, &[i, j])?;
                        Some((Label::Index(rk), ctx_of(i, j)))
                    }
                    _ => None,
                }
            }
            Binding::Controlled { ancilla } => match *label {
                Label::Composite(Prefix::Ancilla(a), b) if a == ancilla => {
                    Some((Label::from(b), Label::Ancilla(a)))
                }
                _ => None,
            },
            Binding::AncillaRegister { only_data } => match *label {
                Label::Composite(Prefix::Ancilla(a), b) if only_data.is_none_or(|d| d == b) => {
                    Some((Label::Ancilla(a), Label::from(b)))
                }
                _ => None,
            },
        }
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(&self, local: &Label, ctx: &Label) -> Label {
        match *self {
            Binding::Identity => *local,
            Binding::PerPair => {
                let Label::Pair(i, j) = *ctx else {
                    unreachable!("per-pair context must be a pair")
                };
                match *local {
                    Label::Scratch0 => Label::Pair(i, j),
                    Label::Side(s) => Label::Tagged(Base::Pair(i, j), s),
                    other => panic!("rotation gadget produced {other:?}"),
                }
            }
            Binding::Substitute(side) => match *local {
                Label::Pair(i, j) => Label::Tagged(Base::Pair(i, j), side),
                other => other,
            },
            Binding::PairSubregister { sum } => {
                let Label::Pair(i, j) = *ctx else {
                    unreachable!("subregister context must be a pair")
                };
                let removed = [i, j];
                let o = |k: u16| original_index(k, &removed);
                match *local {
                    Label::S => Label::Tagged(Base::Pair(i, j), sum),
                    Label::Pair(u, v) => Label::Quad(i, j, o(u), o(v)),
                    Label::Index(k) => Label::Composite(Prefix::Pair(i, j), Base::Index(o(k))),
                    other => panic!("subregister gadget produced {other:?}"),
                }
            }
            Binding::Controlled { .. } => {
                let Label::Ancilla(a) = *ctx else {
                    unreachable!("controlled context must be an ancilla")
                };
                let base = Base::from_label(*local)
                    .unwrap_or_else(|| panic!("controlled gadget produced {local:?}"));
                Label::Composite(Prefix::Ancilla(a), base)
            }
            Binding::AncillaRegister { .. } => {
                let Label::Ancilla(a) = *local else {
                    panic!("ancilla gadget produced {local:?}")
                };
                let base = Base::from_label(*ctx).expect("ancilla context is a data label");
                Label::Composite(Prefix::Ancilla(a), base)
            }
        }
    }
}
