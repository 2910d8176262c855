// SPDX-License-Identifier: Apache-2.0

//! Single-input runs with hand-checked outcomes.

use exactq_core::state::{OutcomeKey, EPS_BRANCH};
use exactq_core::verifier::{run, trace, Chooser};
use exactq_core::*;

fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

fn acceptance(plan: &std::sync::Arc<Plan>, x: &str) -> (f64, usize) {
    let res = run(plan, &bits(x), EPS_BRANCH, None).unwrap();
    let s = res.summary();
    assert!((s.total() - 1.0).abs() < 1e-12, "probability leaked on {x}");
    (s.mass[1], s.max_queries)
}

#[test]
fn unbalance_one_rejects_all_zero() {
    let plan = build_unb(3, 1).unwrap();
    let (p, _) = acceptance(&plan, "000");
    assert!(p.abs() < 1e-12);
    for x in ["100", "010", "011", "101"] {
        assert!((acceptance(&plan, x).0 - 1.0).abs() < 1e-12, "{x}");
    }
    assert!(acceptance(&plan, "111").0.abs() < 1e-12);
}

#[test]
fn equality_on_two_bits_takes_one_query() {
    let plan = build_equality(2).unwrap();
    for (x, want) in [("00", 1.0), ("11", 1.0), ("01", 0.0), ("10", 0.0)] {
        let (p, q) = acceptance(&plan, x);
        assert!((p - want).abs() < 1e-12, "{x}");
        assert_eq!(q, 1);
    }
}

#[test]
fn equality_single_variable_is_constant_true() {
    let plan = build_equality(1).unwrap();
    assert_eq!(plan.structural_depth(), 0);
    assert!((acceptance(&plan, "1").0 - 1.0).abs() < 1e-12);
}

#[test]
fn base_plan_accepts_weight_one() {
    let plan = build_unbr(5, 3).unwrap();
    for x in ["10000", "00100", "11110", "01111"] {
        let (p, q) = acceptance(&plan, x);
        assert!((p - 1.0).abs() < 1e-12, "{x}");
        assert_eq!(q, 2);
    }
    for x in ["11000", "01010", "11100"] {
        assert!(acceptance(&plan, x).0.abs() < 1e-12, "{x}");
    }
}

#[test]
fn base_plan_skips_vanishing_entry() {
    // balanced input with gamma = 0: the entry state is zero
    let plan = build_unbr(2, 2).unwrap();
    let res = run(&plan, &bits("10"), EPS_BRANCH, None).unwrap();
    assert!(res.root.is_none());
    assert_eq!(res.entry_norm2, 0.0);
}

#[test]
fn xor_is_one_query() {
    let plan = build_xor().unwrap();
    for (x, want) in [("00", 0.0), ("01", 1.0), ("10", 1.0), ("11", 0.0)] {
        let (p, q) = acceptance(&plan, x);
        assert!((p - want).abs() < 1e-12);
        assert_eq!(q, 1);
    }
}

#[test]
fn first_measurement_probability_matches_sum() {
    // After the first query the sum outcome has probability (Σ x̂ / n)^2.
    let plan = build_balanced(6).unwrap();
    for x in ["000000", "100000", "110000", "111000", "010110"] {
        let b = bits(x);
        let sum: f64 = b.iter().map(|&v| if v { -1.0 } else { 1.0 }).sum();
        let records = trace(&plan, &b, &Chooser::All).unwrap();
        let p_sum: f64 = records
            .iter()
            .filter(|r| r.path.first() == Some(&OutcomeKey::Label(Label::S)))
            .map(|r| r.state.squared_norm())
            .sum();
        assert!((p_sum - (sum / 6.0).powi(2)).abs() < 1e-12, "{x}: {p_sum}");
    }
}

#[test]
fn arity_mismatch_is_reported() {
    let plan = build_unb(3, 1).unwrap();
    assert_eq!(
        run(&plan, &bits("01"), EPS_BRANCH, None).unwrap_err(),
        Error::ArityMismatch { expected: 3, got: 2 }
    );
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(build_unb(4, 1).is_err());
    assert!(build_unb(3, 0).is_err());
    assert!(build_unbr(3, 5).is_err());
    assert!(build_exact_kl(4, 3, 2).is_err());
    assert!(build_general_unbalance(4, 2).is_err());
    assert!(matches!(
        SymSpec::parse("10000", 0, SymStrategy::OutwardSweep).and_then(|s| s.validate()),
        Err(Error::InconsistentSpec(_))
    ));
}
