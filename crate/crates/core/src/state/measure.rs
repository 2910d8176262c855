// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::label::{Base, Label, Prefix, Side};
use super::LabeledState;
use crate::error::{Error, Result};

/// Default reachability threshold on branch squared norms.
pub const EPS_BRANCH: f64 = 1e-9;

/// Identifies one measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OutcomeKey {
    Label(Label),
    /// All labels carrying this pair, as grouped by the classifier.
    Pair(u16, u16),
    Residual,
}

impl OutcomeKey {
    pub fn pair(&self) -> Option<(u16, u16)> {
        match *self {
            OutcomeKey::Pair(i, j) => Some((i, j)),
            _ => None,
        }
    }
}

/// How labels are grouped into outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classifier {
    /// Every label is its own outcome; bare pairs are keyed as pairs.
    Complete,
    /// `|S>` alone; each pair together with its `|i,j,u,v>` extensions.
    LeadingPair,
    /// Only `|i,j,R>` labels are resolved, one outcome per pair.
    SideR,
    /// Ancilla-data labels: `|a>|S>` alone, pairs grouped across ancillas.
    DataPair,
}

impl Classifier {
    pub fn classify(&self, label: &Label) -> OutcomeKey {
        match (*self, *label) {
            (Classifier::Complete, Label::Pair(i, j)) => OutcomeKey::Pair(i, j),
            (Classifier::Complete, l) => OutcomeKey::Label(l),
            (Classifier::LeadingPair, Label::S) => OutcomeKey::Label(Label::S),
            (Classifier::LeadingPair, Label::Pair(i, j) | Label::Quad(i, j, _, _)) => {
                OutcomeKey::Pair(i, j)
            }
            (Classifier::SideR, Label::Tagged(Base::Pair(i, j), Side::R)) => OutcomeKey::Pair(i, j),
            (Classifier::DataPair, Label::Composite(Prefix::Ancilla(a), Base::S)) => {
                OutcomeKey::Label(Label::Composite(Prefix::Ancilla(a), Base::S))
            }
            (Classifier::DataPair, Label::Composite(Prefix::Ancilla(_), Base::Pair(i, j))) => {
                OutcomeKey::Pair(i, j)
            }
            _ => OutcomeKey::Residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementPartition {
    pub classifier: Classifier,
    /// Whether labels the classifier does not resolve form one extra
    /// outcome. When false they raise `PartitionGap`.
    pub residual: bool,
}

impl MeasurementPartition {
    pub fn new(classifier: Classifier) -> Self {
        Self { classifier, residual: true }
    }

    pub fn strict(classifier: Classifier) -> Self {
        Self { classifier, residual: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub key: OutcomeKey,
    pub state: LabeledState,
    pub norm2: f64,
    pub reachable: bool,
}

/// Projects `state` onto every outcome with nonzero support, in canonical
/// key order. Projections are not renormalized.
pub fn measure(
    state: &LabeledState,
    partition: &MeasurementPartition,
    eps_branch: f64,
) -> Result<Vec<Branch>> {
    let mut groups: BTreeMap<OutcomeKey, Vec<(Label, num_complex::Complex64)>> = BTreeMap::new();
    for (label, amp) in state.iter() {
        let key = partition.classifier.classify(label);
        if key == OutcomeKey::Residual && !partition.residual {
            return Err(Error::PartitionGap(*label));
        }
        groups.entry(key).or_default().push((*label, *amp));
    }
    Ok(groups
        .into_iter()
        .map(|(key, entries)| {
            let state = LabeledState::from_pairs(entries);
            let norm2 = state.squared_norm();
            Branch { key, state, norm2, reachable: norm2 >= eps_branch }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_state_single_outcome() {
        let st = LabeledState::from_real([(Label::S, 2.0), (Label::Pair(1, 2), 0.0)]);
        let out = measure(&st, &MeasurementPartition::new(Classifier::LeadingPair), EPS_BRANCH).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].key, OutcomeKey::Label(Label::S));
        assert_eq!(out[0].norm2, 4.0);
    }

    #[test]
    fn pair_outcome_norm() {
        // x = (0, 1): x̂ = (+1, -1)
        let st = LabeledState::from_real([(Label::Pair(1, 2), 2.0)]);
        let out = measure(&st, &MeasurementPartition::new(Classifier::LeadingPair), EPS_BRANCH).unwrap();
        assert_eq!(out[0].key, OutcomeKey::Pair(1, 2));
        assert_eq!(out[0].norm2, 4.0);
    }

    #[test]
    fn leading_pair_groups_quads() {
        let st = LabeledState::from_real([
            (Label::Pair(1, 2), 1.0),
            (Label::Quad(1, 2, 3, 4), 1.0),
            (Label::Quad(3, 4, 1, 2), 1.0),
        ]);
        let out = measure(&st, &MeasurementPartition::new(Classifier::LeadingPair), EPS_BRANCH).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].norm2, 2.0);
    }

    #[test]
    fn strict_partition_reports_gap() {
        let st = LabeledState::from_real([(Label::Index(1), 1.0)]);
        let err = measure(&st, &MeasurementPartition::strict(Classifier::SideR), EPS_BRANCH);
        assert_eq!(err, Err(Error::PartitionGap(Label::Index(1))));
    }
}
