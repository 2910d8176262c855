// SPDX-License-Identifier: Apache-2.0

//! Base case of the precomputed-state subroutine for `d = 3`, `n = 5`:
//! weights 1 and 4 are separated in two queries starting from the
//! `γ = 1/112` state.

use std::sync::Arc;

use super::rotation;
use crate::gadgets::{u_pair, IndexRule, UnitaryPair};
use crate::plan::{End, Entry, Node, Params, Pattern, Plan, Step};
use crate::state::{Binding, Classifier, Label, MeasurementPartition, OutcomeKey, Side};

/// Reference values of the 18 constants, `c[0]` is `c1`.
pub fn reference_table() -> [f64; 18] {
    let (r5, r7) = (5f64.sqrt(), 7f64.sqrt());
    let r37 = (3.0f64 / 7.0).sqrt();
    [
        1.0 / (4.0 * r7),
        17.0 / (16.0 * r5),
        12.0 / 17.0,
        r37 / 16.0,
        17.0 / 40.0,
        30.0 / 17.0,
        2.0 * (2.0f64 / 7.0).sqrt() / 5.0,
        1.0 / (16.0 * r7),
        1.0 / (8.0 * r5),
        5.0,
        6.0,
        3.0 * r37 / 16.0,
        2.0 / 3.0,
        3.0 / 8.0,
        2.0 / 3.0,
        1.0 / (2.0 * r7),
        1.0,
        3.0 / (16.0 * r7),
    ]
}

/// The reference table with `c12` and `c18` negated, the only sign choice
/// under which every constraint holds.
pub fn consistent_table() -> [f64; 18] {
    let mut c = reference_table();
    c[11] = -c[11];
    c[17] = -c[17];
    c
}

/// Residuals of the 18 constraints, in the order they are introduced.
pub fn constraint_residuals(c: &[f64; 18]) -> [f64; 18] {
    let k = |i: usize| c[i - 1];
    let (r3, r5) = (3f64.sqrt(), 5f64.sqrt());
    [
        (k(2) * k(3) + 4.0 * k(2)) / r5 - 1.0,
        k(1).powi(2) - (k(2) * (k(3) - 1.0) / r5).powi(2) - (3.0 * k(4) / r3).powi(2),
        5.0 * k(2) * k(3) / r5 - k(5) * k(6),
        2.0 * k(2) / r5 - k(5),
        k(7).powi(2) - k(2).powi(2) / 5.0 - k(4).powi(2) / 3.0,
        k(4) / r3 - k(8),
        (2.0 * k(9) + 3.0 * k(9) * k(10)) / r5 - k(5),
        5.0 * k(9) * k(11) / r5 - k(5) * k(6),
        k(7).powi(2) - (k(9) * (1.0 - k(10)) / r5).powi(2) - (k(12) * (2.0 + k(13)) / r3).powi(2),
        k(8) - k(12) * (k(13) - 1.0) / r3,
        k(14) - 3.0 * k(9) * k(10) / r5,
        k(14) * k(15) - (4.0 * k(9) + k(9) * k(11)) / r5,
        k(16).powi(2) - (2.0 * k(12) / r3).powi(2) - (k(9) * k(10) / r5).powi(2),
        k(18) - k(12) / r3,
        k(11) - 1.0 - k(17) * k(10),
        3.0 * k(13) - 2.0 * k(17),
        -2.0 + 3.0 * k(15),
        -1.0 + k(17),
    ]
}

fn signs(x: &[bool]) -> Vec<f64> {
    x.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect()
}

/// `e3(x̂) + c15 Σ x̂`, the sum-state family.
pub fn sum_family(x: &[bool], c15: f64) -> f64 {
    let s = signs(x);
    let n = s.len();
    let mut e3 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                e3 += s[i] * s[j] * s[k];
            }
        }
    }
    e3 + c15 * s.iter().sum::<f64>()
}

/// `(x̂_i - x̂_j)(e2 over the rest + c17)` for the 1-based pair `(i, j)`.
pub fn pair_family(x: &[bool], (i, j): (usize, usize), c17: f64) -> f64 {
    let s = signs(x);
    let rest: Vec<f64> = (1..=s.len()).filter(|&t| t != i && t != j).map(|t| s[t - 1]).collect();
    let mut e2 = 0.0;
    for a in 0..rest.len() {
        for b in a + 1..rest.len() {
            e2 += rest[a] * rest[b];
        }
    }
    (s[i - 1] - s[j - 1]) * (e2 + c17)
}

/// `(x̂_i - x̂_j)(x̂_k - x̂_l) Σ_m x̂_m` over the variables outside both pairs.
pub fn quad_family(x: &[bool], (i, j): (usize, usize), (k, l): (usize, usize)) -> f64 {
    let s = signs(x);
    let rest: f64 = (1..=s.len()).filter(|t| ![i, j, k, l].contains(t)).map(|t| s[t - 1]).sum();
    (s[i - 1] - s[j - 1]) * (s[k - 1] - s[l - 1]) * rest
}

/// `γ` of the entry state.
pub const ENTRY_GAMMA: f64 = 1.0 / 112.0;

/// The two-query plan driven by constant table `c`. Only the consistent
/// table yields a correct algorithm. Rotation angles are normalized, so a
/// common factor on a pair of inputs to one angle has no effect.
pub fn plan_from_table(c: &[f64; 18]) -> Arc<Plan> {
    let k = |i: usize| c[i - 1];
    let (r3, r5) = (3f64.sqrt(), 5f64.sqrt());
    let split1 = rotation((1.0 - r5 * k(2)) / k(1), r3 * k(4) / k(1));
    let merge1 = rotation(k(2) / r5, k(4) / r3);
    let split2 = rotation(k(9) * (1.0 - k(10)) / r5, k(12) * (2.0 + k(13)) / r3);
    let merge2 = rotation(k(9) * k(10) / r5, 2.0 * k(12) / r3);
    let (u5, u3) = (u_pair(5), u_pair(3));
    let sub = Binding::PairSubregister { sum: Side::R };
    let round = |split: &Arc<UnitaryPair>, merge: &Arc<UnitaryPair>| {
        vec![
            Step::gadget(&split.forward, Binding::PerPair),
            Step::gadget(&u5.inverse, Binding::Substitute(Side::L)),
            Step::gadget(&u3.inverse, sub),
            Step::Query(IndexRule::Trailing),
            Step::gadget(&u5.forward, Binding::Substitute(Side::L)),
            Step::gadget(&u3.forward, sub),
            Step::gadget(&merge.inverse, Binding::PerPair),
        ]
    };
    let mut steps = round(&split1, &merge1);
    steps.extend(round(&split2, &merge2));
    let root = Node::new(
        steps,
        End::Measure {
            partition: MeasurementPartition::new(Classifier::Complete),
            children: vec![
                (Pattern::Key(OutcomeKey::Label(Label::S)), Node::leaf(false)),
                (Pattern::AnyPair, Node::leaf(true)),
                (Pattern::AnyQuad, Node::leaf(false)),
                (Pattern::Any, Node::unreachable()),
            ],
        },
    );
    let params = Params { d: Some(3), ..Params::n(5) };
    Plan::new("unbr-base", params, 2, Entry::Precomputed { gamma: ENTRY_GAMMA }, root)
}

pub fn base_plan() -> Arc<Plan> {
    plan_from_table(&consistent_table())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_signs_break_one_constraint() {
        let r = constraint_residuals(&reference_table());
        let bad: Vec<usize> = (0..18).filter(|&i| r[i].abs() > 1e-12).collect();
        assert_eq!(bad, vec![9]);
        assert!(constraint_residuals(&consistent_table()).iter().all(|r| r.abs() < 1e-12));
    }
}
