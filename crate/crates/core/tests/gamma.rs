// SPDX-License-Identifier: Apache-2.0

use exactq_core::algorithms::gamma::{gamma_chain, gamma_next, n_init, quartic};
use exactq_core::algorithms::solve_step_constants;
use exactq_core::Error;

/// Rational recomputation of the first chain steps, independent of the
/// floating point recurrence.
fn rational_first_steps() -> [(usize, usize, f64, f64); 3] {
    [(3, 1, 0.0, 1.0 / 64.0), (5, 1, 1.0 / 64.0, 1.0 / 126.0), (4, 2, 0.0, 1.0 / 9.0)]
}

#[test]
fn first_steps_are_rational() {
    for (n, d, gp, want) in rational_first_steps() {
        let g = gamma_next(n, d, gp).unwrap();
        assert!((g - want).abs() < 1e-15, "n={n} d={d}: {g}");
    }
}

#[test]
fn chain_values() {
    let c = gamma_chain(1, 0, 0.0, 41).unwrap();
    assert!((c.gamma_at(5).unwrap() - 1.0 / 126.0).abs() < 1e-15);
    assert!(c.gamma_at(4).is_none());
    let c2 = gamma_chain(2, 0, 0.0, 41).unwrap();
    assert!((c2.gamma_at(12).unwrap() - 0.039).abs() < 1e-3);
    let c3 = gamma_chain(3, 1, 1.0 / 112.0, 41).unwrap();
    assert!((c3.gamma_at(23).unwrap() - 0.030).abs() < 1e-3);
}

#[test]
fn chain_entries_agree_with_step_constants() {
    let chain = gamma_chain(2, 0, 0.0, 30).unwrap();
    for pair in chain.entries.windows(2) {
        let sc = solve_step_constants(pair[1].n, 2, pair[0].gamma).unwrap();
        assert!((sc.gamma - pair[1].gamma).abs() < 1e-14);
        assert!(sc.max_residual() < 1e-12);
    }
}

#[test]
fn thresholds() {
    assert_eq!([n_init(1), n_init(2), n_init(3)], [5, 12, 23]);
    assert!(quartic(21, 3) < 0.0 && quartic(23, 3) >= 0.0);
}

#[test]
fn error_paths() {
    assert_eq!(gamma_next(3, 3, 0.0), Err(Error::DegenerateCase(3)));
    assert!(matches!(gamma_next(5, 0, 0.0), Err(Error::Domain(_))));
    assert!(matches!(gamma_next(5, 1, 1.0), Err(Error::DivergedChain { .. })));
    assert!(matches!(solve_step_constants(3, 3, 0.0), Err(Error::DegenerateCase(3))));
    assert!(matches!(gamma_chain(3, 0, 0.0, 41), Err(Error::DivergedChain { .. })));
}
