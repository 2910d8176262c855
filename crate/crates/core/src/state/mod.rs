// SPDX-License-Identifier: Apache-2.0

//! Sparse labeled states, partial isometries, and measurement.

mod binding;
mod gadget;
pub mod label;
mod labeled_state;
mod measure;

pub use binding::Binding;
pub use gadget::{apply_isometry, complete_isometry, IsometryGadget, EPS_UNITARY};
pub use label::{Base, Label, Prefix, Side};
pub use labeled_state::{squared_norm, LabeledState, EPS_STORE};
pub use measure::{measure, Branch, Classifier, MeasurementPartition, OutcomeKey, EPS_BRANCH};
