// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use super::basic::{build_equality, build_exact_k};
use super::general::build_general_unbalance;
use super::unb::build_unb;
use super::cached;
use crate::error::{Error, Result};
use crate::plan::{Entry, LabelMap, Node, Params, Plan, Removal};

/// Outputs 1 iff `|x| ∈ {k, l}`. Appends constant bits until the two
/// weights sit symmetrically around `n'/2`, then dispatches on `d = l - k`.
pub fn build_exact_kl(n: usize, k: usize, l: usize) -> Result<Arc<Plan>> {
    if k > l || l > n {
        return Err(Error::Domain(format!("need 0 <= k <= l <= n, got n = {n}, k = {k}, l = {l}")));
    }
    cached(format!("exact_kl/{n}/{k}/{l}"), || {
        let params = Params { k: Some(k), l: Some(l), ..Params::n(n) };
        let d = l - k;
        if d == 0 {
            let sub = build_exact_k(n, k)?;
            let root = Node::call(Vec::new(), &sub, Removal::None, Vec::new(), LabelMap::Identity);
            return Ok(Plan::new("exact_kl", params, sub.claimed_queries(), Entry::Scratch, root));
        }
        let p = n as isize - l as isize - k as isize;
        let append = if p > 0 { vec![true; p as usize] } else { vec![false; (-p) as usize] };
        let n2 = n + append.len();
        let k2 = k + p.max(0) as usize;
        let sub = if k2 == 0 {
            build_equality(n2)?
        } else if d <= 3 {
            build_unb(n2, d)?
        } else {
            build_general_unbalance(n2, k2)?
        };
        let root = Node::call(Vec::new(), &sub, Removal::None, append, LabelMap::Identity);
        Ok(Plan::new("exact_kl", params, sub.claimed_queries(), Entry::Scratch, root))
    })
}
