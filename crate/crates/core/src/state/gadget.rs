// SPDX-License-Identifier: Apache-2.0

//! Partial isometries over labeled subspaces, their deterministic unitary
//! completion, and application to states through a [`Binding`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex64;

use super::{Label, LabeledState};
use crate::error::{Error, Result};
use crate::state::Binding;

/// Column orthonormality / unitarity tolerance.
pub const EPS_UNITARY: f64 = 1e-12;

/// Vectors whose residual norm falls below this during completion are
/// treated as dependent and dropped.
const DEPENDENCE_CUTOFF: f64 = 1e-6;

type Column = Vec<(usize, Complex64)>;

/// A linear map specified on some input labels, optionally completed to a
/// unitary on the span of every label it mentions.
#[derive(Debug, Clone)]
pub struct IsometryGadget {
    name: String,
    /// Canonically ordered label space (inputs and outputs).
    space: Vec<Label>,
    index: HashMap<Label, usize>,
    inputs: Vec<Label>,
    /// Sparse columns keyed by space position of the input label.
    columns: BTreeMap<usize, Column>,
    completed: bool,
}

fn to_sparse(dense: &[Complex64]) -> Column {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() > 1e-15)
        .map(|(i, v)| (i, *v))
        .collect()
}

fn to_dense(col: &Column, dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for &(i, v) in col {
        out[i] = v;
    }
    out
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl IsometryGadget {
    /// Builds a gadget from input columns. Fails with `NotIsometry` if the
    /// columns are not orthonormal within [`EPS_UNITARY`].
    pub fn new(name: impl Into<String>, columns: Vec<(Label, LabeledState)>) -> Result<Self> {
        Self::with_space(name, columns, &[])
    }

    /// Like [`new`](Self::new), but the label space also contains `extra`
    /// even where no column touches it.
    pub fn with_space(
        name: impl Into<String>,
        columns: Vec<(Label, LabeledState)>,
        extra: &[Label],
    ) -> Result<Self> {
        let mut labels: BTreeSet<Label> = extra.iter().copied().collect();
        for (input, col) in &columns {
            labels.insert(*input);
            labels.extend(col.labels().copied());
        }
        let space: Vec<Label> = labels.into_iter().collect();
        let index: HashMap<Label, usize> = space.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let mut sparse = BTreeMap::new();
        let mut inputs = Vec::with_capacity(columns.len());
        for (input, col) in &columns {
            let c: Column = col.iter().map(|(l, a)| (index[l], *a)).collect();
            if sparse.insert(index[input], c).is_some() {
                return Err(Error::BindingConflict(*input));
            }
            inputs.push(*input);
        }
        inputs.sort();
        let gadget = Self {
            name: name.into(),
            space,
            index,
            inputs,
            columns: sparse,
            completed: false,
        };
        let residual = gadget.isometry_residual();
        if residual > EPS_UNITARY {
            return Err(Error::NotIsometry { residual });
        }
        Ok(gadget)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &[Label] {
        &self.space
    }

    pub fn inputs(&self) -> &[Label] {
        &self.inputs
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn is_completed(&self) -> bool {
        self.completed
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.index.contains_key(label)
    }

    /// Image of one basis label, if its column is known.
    pub fn column(&self, input: &Label) -> Option<LabeledState> {
        let pos = self.index.get(input)?;
        let col = self.columns.get(pos)?;
        Some(LabeledState::from_pairs(col.iter().map(|&(i, a)| (self.space[i], a))))
    }

    /// Max entry of |C†C - I| over the specified columns.
    pub fn isometry_residual(&self) -> f64 {
        let dim = self.dim();
        let cols: Vec<Vec<Complex64>> = self.columns.values().map(|c| to_dense(c, dim)).collect();
        let mut worst: f64 = 0.0;
        for (a, ca) in cols.iter().enumerate() {
            for (b, cb) in cols.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot(ca, cb) - target).norm());
            }
        }
        worst
    }

    /// Max entry of |U†U - I|; only meaningful once completed.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.completed {
            return f64::INFINITY;
        }
        self.isometry_residual()
    }

    /// Extends the specified columns to a unitary on the whole label space:
    /// standard basis vectors, in canonical label order, are orthogonalized
    /// against everything kept so far; dependent ones are dropped; the
    /// survivors become the columns of the unspecified labels, again in
    /// canonical order. Specified columns are left untouched.
    pub fn complete(&self) -> Result<Self> {
        if self.completed {
            return Ok(self.clone());
        }
        let residual = self.isometry_residual();
        if residual > EPS_UNITARY {
            return Err(Error::NotIsometry { residual });
        }
        let dim = self.dim();
        let mut basis: Vec<Vec<Complex64>> =
            self.columns.values().map(|c| to_dense(c, dim)).collect();
        let mut extra: Vec<Vec<Complex64>> = Vec::new();
        let needed = dim - basis.len();
        for e in 0..dim {
            if extra.len() == needed {
                break;
            }
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[e] = Complex64::new(1.0, 0.0);
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for q in basis.iter().chain(extra.iter()) {
                    let proj = dot(q, &v);
                    for (vi, qi) in v.iter_mut().zip(q) {
                        *vi -= proj * qi;
                    }
                }
            }
            let norm = dot(&v, &v).re.sqrt();
            if norm < DEPENDENCE_CUTOFF {
                continue;
            }
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            extra.push(v);
        }
        basis.clear();
        let mut columns = self.columns.clone();
        let free: Vec<usize> = (0..dim).filter(|i| !columns.contains_key(i)).collect();
        debug_assert_eq!(free.len(), extra.len());
        for (pos, v) in free.into_iter().zip(extra) {
            columns.insert(pos, to_sparse(&v));
        }
        let completed = Self {
            name: self.name.clone(),
            space: self.space.clone(),
            index: self.index.clone(),
            inputs: self.inputs.clone(),
            columns,
            completed: true,
        };
        let residual = completed.isometry_residual();
        if residual > EPS_UNITARY {
            return Err(Error::NotIsometry { residual });
        }
        Ok(completed)
    }

    /// Conjugate transpose of the completed unitary.
    pub fn inverse(&self) -> Result<Self> {
        let full = self.complete()?;
        let dim = full.dim();
        let mut rows: BTreeMap<usize, Column> = BTreeMap::new();
        for (&c, col) in &full.columns {
            for &(r, v) in col {
                rows.entry(r).or_default().push((c, v.conj()));
            }
        }
        for r in 0..dim {
            rows.entry(r).or_default();
        }
        Ok(Self {
            name: format!("{}^-1", full.name),
            space: full.space.clone(),
            index: full.index.clone(),
            inputs: full.space.clone(),
            columns: rows,
            completed: true,
        })
    }

    /// Applies the gadget to every component of `state` that `binding` maps
    /// into the gadget space; other components pass through unchanged.
    pub fn apply(&self, state: &LabeledState, binding: &Binding) -> Result<LabeledState> {
        let mut untouched: BTreeMap<Label, Complex64> = BTreeMap::new();
        // context -> (gadget position -> amplitude)
        let mut groups: BTreeMap<Label, Vec<(usize, Complex64)>> = BTreeMap::new();
        for (label, amp) in state.iter() {
            match binding.split(label) {
                Some((local, ctx)) => match self.index.get(&local) {
                    Some(&pos) => {
                        if !self.columns.contains_key(&pos) {
                            return Err(Error::UnspecifiedColumn(*label));
                        }
                        groups.entry(ctx).or_default().push((pos, *amp));
                    }
                    None => {
                        untouched.insert(*label, *amp);
                    }
                },
                None => {
                    untouched.insert(*label, *amp);
                }
            }
        }
        let mut out: BTreeMap<Label, Complex64> = BTreeMap::new();
        for (ctx, entries) in groups {
            let mut acc: BTreeMap<usize, Complex64> = BTreeMap::new();
            for (pos, amp) in entries {
                for &(row, v) in &self.columns[&pos] {
                    *acc.entry(row).or_default() += v * amp;
                }
            }
            for (row, amp) in acc {
                let target = binding.join(&self.space[row], &ctx);
                if untouched.contains_key(&target) {
                    return Err(Error::BindingConflict(target));
                }
                if out.insert(target, amp).is_some() {
                    return Err(Error::BindingConflict(target));
                }
            }
        }
        out.extend(untouched);
        Ok(LabeledState::from_map_unpruned(out))
    }
}

/// Free-function form used by the plan executor.
pub fn apply_isometry(
    state: &LabeledState,
    gadget: &IsometryGadget,
    binding: &Binding,
) -> Result<LabeledState> {
    gadget.apply(state, binding)
}

pub fn complete_isometry(gadget: &IsometryGadget) -> Result<IsometryGadget> {
    gadget.complete()
}
