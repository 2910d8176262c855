// SPDX-License-Identifier: Apache-2.0

//! `Σ x̂ = ±d` versus everything else, for `d ∈ {1, 2, 3}`.
//!
//! The main routine measures the pair register once; a pair outcome drops
//! two different bits, otherwise the remaining state is the precomputed
//! state of the recursive subroutine, which trades one query for two
//! variables until it reaches a base case.

use std::sync::Arc;

use super::constants::{solve_step_constants, solve_with_target, StepConstants};
use super::gamma::gamma_next;
use super::{base_table, basic, cached, rotation};
use crate::error::{Error, Result};
use crate::gadgets::{u_pair, IndexRule};
use crate::plan::{End, Entry, LabelMap, Node, PairTemplate, Params, Pattern, Plan, Prep, Removal, Step};
use crate::state::{Binding, Classifier, Label, LabeledState, MeasurementPartition, OutcomeKey, Side};

/// Base of the `γ` chain: `(n_base, γ at n_base, queries at n_base)`.
pub fn chain_base(d: usize) -> Result<(usize, f64, usize)> {
    match d {
        1 => Ok((1, 0.0, 0)),
        2 => Ok((2, 0.0, 0)),
        3 => Ok((5, 1.0 / 112.0, 2)),
        _ => Err(Error::NoChain { d, n: d }),
    }
}

fn check(n: usize, d: usize) -> Result<(usize, f64, usize)> {
    if d == 0 || n < d || (n - d) % 2 == 1 {
        return Err(Error::Domain(format!("need n >= d >= 1 with n - d even, got n = {n}, d = {d}")));
    }
    let base = chain_base(d).map_err(|_| Error::NoChain { d, n })?;
    Ok(base)
}

/// `γ` of the subroutine on `n` variables.
pub fn unbr_gamma(n: usize, d: usize) -> Result<f64> {
    let (n0, g0, _) = check(n, d)?;
    if n < n0 {
        return Err(Error::NoChain { d, n });
    }
    let mut gamma = g0;
    for m in (n0 + 2..=n).step_by(2) {
        gamma = gamma_next(m, d, gamma)?;
    }
    Ok(gamma)
}

fn unbr_claim(n: usize, d: usize) -> Result<usize> {
    let (n0, _, t0) = check(n, d)?;
    Ok((n - n0) / 2 + t0)
}

/// The recursive subroutine on `n` variables, entered from
/// `Σ x̂ |S> + √γ Σ (x̂_i - x̂_j)|i,j>`.
pub fn build_unbr(n: usize, d: usize) -> Result<Arc<Plan>> {
    let (n0, _, _) = check(n, d)?;
    if n < n0 {
        return Err(Error::NoChain { d, n });
    }
    cached(format!("unbr/{n}/{d}"), || {
        if n == n0 {
            return Ok(base_plan(d));
        }
        let sc = solve_step_constants(n, d, unbr_gamma(n - 2, d)?)?;
        unbr_step(&sc, &build_unbr(n - 2, d)?)
    })
}

fn base_plan(d: usize) -> Arc<Plan> {
    let params = |n| Params { d: Some(d), ..Params::n(n) };
    match d {
        1 => Plan::new("unbr", params(1), 0, Entry::Precomputed { gamma: 0.0 }, Node::leaf(true)),
        2 => {
            let root = Node::new(
                Vec::new(),
                End::Measure {
                    partition: MeasurementPartition::new(Classifier::Complete),
                    children: vec![
                        (Pattern::Key(OutcomeKey::Label(Label::S)), Node::leaf(true)),
                        (Pattern::AnyPair, Node::leaf(false)),
                        (Pattern::Any, Node::unreachable()),
                    ],
                },
            );
            Plan::new("unbr", params(2), 0, Entry::Precomputed { gamma: 0.0 }, root)
        }
        _ => base_table::base_plan(),
    }
}

/// One recursive step built from explicit constants, calling `sub` on the
/// two variables of the measured pair removed.
pub fn unbr_step(sc: &StepConstants, sub: &Arc<Plan>) -> Result<Arc<Plan>> {
    let (n, d) = (sc.n, sc.d);
    let split = rotation(sc.get(1), sc.get(2));
    let merge = rotation(sc.get(8), sc.get(9));
    let (un, um) = (u_pair(n), u_pair(n - 2));
    let sub_binding = Binding::PairSubregister { sum: Side::R };
    let steps = vec![
        Step::gadget(&split.forward, Binding::PerPair),
        Step::gadget(&un.inverse, Binding::Substitute(Side::L)),
        Step::gadget(&um.inverse, sub_binding),
        Step::Query(IndexRule::Trailing),
        Step::gadget(&un.forward, Binding::Substitute(Side::L)),
        Step::gadget(&um.forward, sub_binding),
        Step::gadget(&merge.inverse, Binding::PerPair),
    ];
    let recurse = Node::call(Vec::new(), sub, Removal::OutcomePair, Vec::new(), LabelMap::CollapsePair);
    let root = Node::new(
        steps,
        End::Measure {
            partition: MeasurementPartition::new(Classifier::LeadingPair),
            children: vec![
                (Pattern::Key(OutcomeKey::Label(Label::S)), Node::leaf(false)),
                (Pattern::AnyPair, recurse),
                (Pattern::Any, Node::unreachable()),
            ],
        },
    );
    let params = Params { d: Some(d), ..Params::n(n) };
    Ok(Plan::new("unbr", params, unbr_claim(n, d)?, Entry::Precomputed { gamma: sc.gamma }, root))
}

/// The subroutine on `n` variables with the top step's constants passed
/// through `mutate` first. Lower steps are unchanged.
pub fn build_unbr_mutant(n: usize, d: usize, mutate: impl FnOnce(&mut StepConstants)) -> Result<Arc<Plan>> {
    let (n0, _, _) = check(n, d)?;
    if n <= n0 {
        return Err(Error::Domain(format!("no recursive step at n = {n} for d = {d}")));
    }
    let mut sc = solve_step_constants(n, d, unbr_gamma(n - 2, d)?)?;
    mutate(&mut sc);
    unbr_step(&sc, &build_unbr(n - 2, d)?)
}

/// The subroutine with the top step solved for `c7` in place of `d²`,
/// entered from the correct state.
pub fn build_unbr_with_c7(n: usize, d: usize, c7: f64) -> Result<Arc<Plan>> {
    let (n0, _, _) = check(n, d)?;
    if n <= n0 {
        return Err(Error::Domain(format!("no recursive step at n = {n} for d = {d}")));
    }
    let gamma = unbr_gamma(n, d)?;
    let mut sc = solve_with_target(n, d, unbr_gamma(n - 2, d)?, c7);
    sc.gamma = gamma;
    unbr_step(&sc, &build_unbr(n - 2, d)?)
}

/// Queries claimed for the main routine.
pub fn unb_claim(n: usize, d: usize) -> usize {
    match (n == d, d) {
        (true, _) => d - 1,
        (false, 1) => n.div_ceil(2),
        (false, _) => (n + d) / 2 - 1,
    }
}

/// Outputs 1 iff `Σ x̂ = ±d`, for `d ∈ {1, 2, 3}` and `n ≡ d (mod 2)`.
pub fn build_unb(n: usize, d: usize) -> Result<Arc<Plan>> {
    let (n0, _, _) = check(n, d)?;
    if n == d {
        return basic::build_equality(n);
    }
    if n < n0 {
        return Err(Error::NoChain { d, n });
    }
    cached(format!("unb/{n}/{d}"), || {
        let gamma = unbr_gamma(n, d)?;
        let split = rotation(gamma.sqrt(), (1.0 - gamma).sqrt());
        let uniform = LabeledState::from_real((1..=n as u16).map(|i| (Label::Index(i), 1.0)));
        let steps = vec![
            Step::Prepare(Prep::fixed(&uniform)),
            Step::Query(IndexRule::IndexOnly),
            Step::gadget(&u_pair(n).forward, Binding::Identity),
            Step::gadget(&split.forward, Binding::PerPair),
        ];
        let drop_pair = Node::call(
            vec![Step::Uncompute(Prep::Outcome(PairTemplate::TaggedR))],
            &build_unb(n - 2, d)?,
            Removal::OutcomePair,
            Vec::new(),
            LabelMap::Identity,
        );
        let continue_sub = Node::call(
            Vec::new(),
            &build_unbr(n, d)?,
            Removal::None,
            Vec::new(),
            LabelMap::Untag(Side::L),
        );
        let root = Node::new(
            steps,
            End::Measure {
                partition: MeasurementPartition::new(Classifier::SideR),
                children: vec![(Pattern::AnyPair, drop_pair), (Pattern::Residual, continue_sub)],
            },
        );
        let params = Params { d: Some(d), ..Params::n(n) };
        Ok(Plan::new("unb", params, unb_claim(n, d), Entry::Scratch, root))
    })
}
