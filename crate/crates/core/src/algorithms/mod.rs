// SPDX-License-Identifier: Apache-2.0

//! Plan builders for the exact algorithms.

pub mod base_table;
pub mod basic;
pub mod constants;
pub mod exact_kl;
pub mod gamma;
pub mod general;
pub mod sym;
pub mod unb;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::gadgets::{rotation_sc, UnitaryPair};
use crate::plan::Plan;

pub use basic::{build_balanced, build_constant, build_equality, build_exact_k, build_xor};
pub use constants::{solve_step_constants, StepConstants};
pub use exact_kl::build_exact_kl;
pub use gamma::{gamma_chain, gamma_next, GammaChain};
pub use general::{build_general_unbalance, build_uw};
pub use sym::{build_sym, SymSpec, SymStrategy};
pub use unb::{build_unb, build_unbr};

/// Plans are shared between builders so that identical sub-plans are one
/// allocation, which keeps executor memo keys stable.
fn cached(key: String, build: impl FnOnce() -> Result<Arc<Plan>>) -> Result<Arc<Plan>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Plan>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("plan cache").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let plan = build()?;
    Ok(Arc::clone(cache.lock().expect("plan cache").entry(key).or_insert(plan)))
}

pub(crate) fn rotation(sin: f64, cos: f64) -> Arc<UnitaryPair> {
    Arc::new(UnitaryPair::from_partial(rotation_sc(sin, cos)).expect("rotation completes"))
}
