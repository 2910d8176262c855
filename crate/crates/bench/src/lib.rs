// SPDX-License-Identifier: Apache-2.0

//! Fixed workloads shared by the benchmarks.

use std::sync::Arc;

use exactq_core::{build_exact_kl, build_general_unbalance, build_sym, build_unb, Plan, SymSpec, SymStrategy};

/// Named plans of increasing size for the verification sweep.
pub fn verify_cases() -> Vec<(String, Arc<Plan>)> {
    let mut cases = Vec::new();
    for (n, d) in [(7, 1), (10, 2), (11, 3)] {
        cases.push((format!("unb/{n}/{d}"), build_unb(n, d).expect("valid instance")));
    }
    cases.push(("general/10/3".into(), build_general_unbalance(10, 3).expect("valid instance")));
    cases.push(("exact_kl/10/1/8".into(), build_exact_kl(10, 1, 8).expect("valid instance")));
    let spec = SymSpec::parse("00011000", 1, SymStrategy::OutwardSweep).expect("valid spec");
    cases.push(("sym/00011000".into(), build_sym(&spec).expect("valid spec")));
    cases
}

#[cfg(test)]
mod tests {
    #[test]
    fn cases_build() {
        assert_eq!(super::verify_cases().len(), 6);
    }
}
