// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use exactq_core::verifier::poly::{
    acceptance_polynomial, degree_audit, lower_bound_witness, root_count_lower_bound, symmetrize_to_univariate,
    MultilinearPoly,
};
use exactq_core::*;

#[test]
fn xor_acceptance_polynomial() {
    // in ±1 form: 1/2 - x̂1 x̂2 / 2
    let p = acceptance_polynomial(&build_xor().unwrap()).unwrap();
    assert!((p.coeff(0).re - 0.5).abs() < 1e-12);
    assert!((p.coeff(0b11).re + 0.5).abs() < 1e-12);
    assert!(p.coeff(0b01).norm() < 1e-12 && p.coeff(0b10).norm() < 1e-12);
    assert_eq!(p.degree(1e-9), 2);
}

#[test]
fn symmetrization_of_parity() {
    let vals: Vec<f64> = (0..8u32).map(|x| (x.count_ones() % 2) as f64).collect();
    let q = symmetrize_to_univariate(&MultilinearPoly::from_real(3, &vals).unwrap()).unwrap();
    assert_eq!(q.real_values().iter().map(|v| v.round() as i32).collect::<Vec<_>>(), [0, 1, 0, 1]);
    assert_eq!(q.degree(1e-9), 3);
}

/// Average of `f` over all orderings of the inputs, at one input per weight.
fn permutation_average(n: usize, f: impl Fn(&[bool]) -> f64, s: usize) -> f64 {
    fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut p in perms(rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let x: Vec<bool> = (0..n).map(|i| i < s).collect();
    let all = perms((0..n).collect());
    all.iter().map(|p| f(&p.iter().map(|&i| x[i]).collect::<Vec<_>>())).sum::<f64>() / all.len() as f64
}

#[test]
fn symmetrizing_a_product_of_two_signs() {
    let sign = |b: bool| if b { -1.0 } else { 1.0 };
    let f = |x: &[bool]| sign(x[0]) * sign(x[1]);
    let vals: Vec<f64> = (0..8u32).map(|x| f(&[x & 1 == 1, x & 2 == 2, x & 4 == 4])).collect();
    let q = symmetrize_to_univariate(&MultilinearPoly::from_real(3, &vals).unwrap()).unwrap();
    let want = [1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0];
    for s in 0..=3 {
        assert!((q.real_values()[s] - want[s]).abs() < 1e-12);
        assert!((permutation_average(3, f, s) - want[s]).abs() < 1e-12);
    }
}

#[test]
fn root_count_example() {
    let q: BTreeMap<usize, f64> = [(0, 1.0), (1, 0.0), (2, 0.5), (3, 0.0), (4, 0.0), (5, 0.0)].into();
    assert_eq!(root_count_lower_bound(&q, 0).unwrap(), 4);
    assert!(matches!(root_count_lower_bound(&q, 1), Err(Error::ZeroWitnessMissing { point: 1, .. })));
}

#[test]
fn degree_audit_small_plans() {
    for plan in [build_unb(5, 1).unwrap(), build_exact_kl(6, 1, 5).unwrap(), build_equality(4).unwrap()] {
        let audit = degree_audit(&plan).unwrap();
        assert!(audit.passed(), "{plan}: {:?}", audit.violations.first());
        assert!(audit.max_degree <= plan.structural_depth());
    }
}

#[test]
fn witnesses_for_exact_kl() {
    for (n, k, l) in [(3, 1, 2), (5, 2, 3), (6, 2, 4), (7, 1, 4), (6, 1, 5)] {
        let w = lower_bound_witness(&build_exact_kl(n, k, l).unwrap(), k, l).unwrap();
        assert_eq!(w.expected, (n - k).max(l) - 1);
        assert!(w.zeros >= w.expected, "({n},{k},{l}): {} < {}", w.zeros, w.expected);
        assert!(w.zeros <= w.path_queries);
    }
}

#[test]
fn too_many_variables() {
    let plan = build_equality(15).unwrap();
    assert!(matches!(acceptance_polynomial(&plan), Err(Error::TooLarge { .. })));
}
