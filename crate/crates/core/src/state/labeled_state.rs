// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Label;

/// Amplitudes with magnitude below this are dropped after every operation.
pub const EPS_STORE: f64 = 1e-13;

/// Sparse, unnormalized state: a map from basis label to amplitude.
/// Absent labels have amplitude zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LabeledState {
    amplitudes: BTreeMap<Label, Complex64>,
}

impl LabeledState {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `amp |label>`.
    pub fn basis(label: Label, amp: impl Into<Complex64>) -> Self {
        Self::from_pairs([(label, amp.into())])
    }

    /// Builds a state, summing duplicate labels and pruning tiny entries.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Label, Complex64)>,
    {
        let mut amplitudes = BTreeMap::new();
        for (label, amp) in pairs {
            *amplitudes.entry(label).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        let mut state = Self { amplitudes };
        state.prune();
        state
    }

    pub fn from_real<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Label, f64)>,
    {
        Self::from_pairs(pairs.into_iter().map(|(l, a)| (l, Complex64::new(a, 0.0))))
    }

    pub(crate) fn from_map_unpruned(amplitudes: BTreeMap<Label, Complex64>) -> Self {
        let mut state = Self { amplitudes };
        state.prune();
        state
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, a| a.norm() >= EPS_STORE);
    }

    pub fn amplitude(&self, label: &Label) -> Complex64 {
        self.amplitudes.get(label).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.amplitudes.keys()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn squared_norm(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, factor: impl Into<Complex64>) -> Self {
        let factor = factor.into();
        Self::from_pairs(self.amplitudes.iter().map(|(l, a)| (*l, a * factor)))
    }

    pub fn add(&self, other: &LabeledState) -> Self {
        Self::from_pairs(
            self.amplitudes
                .iter()
                .chain(other.amplitudes.iter())
                .map(|(l, a)| (*l, *a)),
        )
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &LabeledState) -> Complex64 {
        self.amplitudes
            .iter()
            .map(|(l, a)| a.conj() * other.amplitude(l))
            .sum()
    }

    /// Largest absolute amplitude difference between two states.
    pub fn max_abs_diff(&self, other: &LabeledState) -> f64 {
        self.amplitudes
            .keys()
            .chain(other.amplitudes.keys())
            .map(|l| (self.amplitude(l) - other.amplitude(l)).norm())
            .fold(0.0, f64::max)
    }

    /// Splits into (labels satisfying `pred`, the rest).
    pub fn partition_by(&self, mut pred: impl FnMut(&Label) -> bool) -> (Self, Self) {
        let mut yes = BTreeMap::new();
        let mut no = BTreeMap::new();
        for (l, a) in &self.amplitudes {
            if pred(l) {
                yes.insert(*l, *a);
            } else {
                no.insert(*l, *a);
            }
        }
        (Self { amplitudes: yes }, Self { amplitudes: no })
    }

    pub fn into_inner(self) -> BTreeMap<Label, Complex64> {
        self.amplitudes
    }
}

pub fn squared_norm(state: &LabeledState) -> f64 {
    state.squared_norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_has_zero_norm() {
        assert_eq!(LabeledState::zero().squared_norm(), 0.0);
    }

    #[test]
    fn sum_plus_pair_norm_two() {
        let s = LabeledState::from_real([(Label::S, 1.0), (Label::Pair(1, 2), 1.0)]);
        assert_eq!(s.squared_norm(), 2.0);
    }

    #[test]
    fn tiny_amplitudes_are_pruned() {
        let s = LabeledState::from_real([(Label::S, 1e-15), (Label::Index(1), 0.5)]);
        assert_eq!(s.len(), 1);
        let cancelled = LabeledState::from_real([(Label::S, 1.0), (Label::S, -1.0)]);
        assert!(cancelled.is_empty());
    }
}
