// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use exactq_core::algorithms::base_table::{consistent_table, constraint_residuals, reference_table};
use exactq_core::algorithms::unb::unbr_gamma;
use exactq_core::state::OutcomeKey;
use exactq_core::verifier::poly::{acceptance_polynomial, degree_audit, leaf_polynomials, symmetrize_to_univariate, EPS_ZERO};
use exactq_core::verifier::{run, Chooser, Memo};
use exactq_core::{
    build_balanced, build_constant, build_equality, build_exact_k, build_exact_kl, build_general_unbalance, build_sym,
    build_unb, build_unbr, build_uw, build_xor, gamma_chain, solve_step_constants, truth_for, verify_exactness, Error, Plan,
    SymSpec, Truth, VerifyOptions,
};

use crate::args::{Common, ConstantsArgs, Family, GammaArgs, PlanArgs, PolyArgs, VerifyArgs};
use crate::output::emit;
use crate::report::*;
use crate::Failure;

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Input(format!("--{flag} is required for family {family:?}").to_lowercase()))
}

pub fn build_plan(args: &PlanArgs) -> Result<Arc<Plan>, Failure> {
    let f = args.family;
    let n = || need(args.n, "n", f);
    let plan = match f {
        Family::Equality => build_equality(n()?)?,
        Family::Xor => build_xor()?,
        Family::Constant => build_constant(n()?, need(args.k, "k", f)? != 0)?,
        Family::Balanced => build_balanced(n()?)?,
        Family::Exact => build_exact_k(n()?, need(args.k, "k", f)?)?,
        Family::Exactkl => build_exact_kl(n()?, need(args.k, "k", f)?, need(args.l, "l", f)?)?,
        Family::Unb => build_unb(n()?, need(args.d, "d", f)?)?,
        Family::Unbr => build_unbr(n()?, need(args.d, "d", f)?)?,
        Family::General => build_general_unbalance(n()?, need(args.k, "k", f)?)?,
        Family::Uw => build_uw(n()?, need(args.u, "u", f)?, need(args.w, "w", f)?)?,
        Family::Sym => {
            let a = args.a.as_deref().ok_or_else(|| Failure::Input("--a is required for family sym".into()))?;
            let spec = SymSpec::parse(a, need(args.g, "g", f)?, args.strategy.into())?;
            if let Some(n) = args.n {
                if n != spec.n() {
                    return Err(Failure::Input(format!("--n {n} does not match --a of length {}", spec.n() + 1)));
                }
            }
            build_sym(&spec)?
        }
    };
    Ok(plan)
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn input_rows(plan: &Arc<Plan>, truth: &Truth, eps: f64) -> Result<Vec<InputRow>, Failure> {
    let n = plan.n();
    let mut memo = Memo::default();
    let mut rows = Vec::with_capacity(1 << n);
    for x in 0..1u64 << n {
        let bits: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
        let res = run(plan, &bits, eps, Some(&mut memo))?;
        let summary = res.summary();
        rows.push(InputRow {
            x: bit_string(&bits),
            expected: truth.value(&bits),
            accept: res.root.as_ref().map(|_| summary.mass[1]),
            queries: summary.max_queries,
        });
    }
    Ok(rows)
}

pub fn verify_report(common: &Common, args: &VerifyArgs) -> Result<VerifyReport, Failure> {
    if common.tol.is_nan() || common.tol <= 0.0 || args.branch_tol.is_nan() || args.branch_tol <= 0.0 {
        return Err(Failure::Input("tolerances must be positive".into()));
    }
    let plan = build_plan(&args.plan)?;
    let truth = truth_for(&plan).ok_or_else(|| Failure::Input(format!("no target function for {plan}")))?;
    let opts = VerifyOptions { eps_branch: args.branch_tol, tol: common.tol, parallel: args.parallel != 1, ..Default::default() };
    let r = if args.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.parallel)
            .build()
            .map_err(|e| Failure::Input(e.to_string()))?;
        pool.install(|| verify_exactness(&plan, &truth, &opts))?
    } else {
        verify_exactness(&plan, &truth, &opts)?
    };
    let inputs = if common.verbose { Some(input_rows(&plan, &truth, args.branch_tol)?) } else { None };
    Ok(VerifyReport {
        family: r.family,
        params: r.params,
        exact: r.exact,
        worst_case_queries: r.worst_case_queries,
        claimed_bound: r.claimed_bound,
        max_norm_residual: r.max_norm_residual,
        tool_version: TOOL_VERSION.into(),
        within_claim: r.within_claim,
        structural_depth: r.structural_depth,
        inputs_checked: r.inputs_checked,
        inputs_skipped: r.inputs_skipped,
        max_error: r.max_error,
        counterexamples: r.counterexamples,
        inputs,
    })
}

pub fn verify(common: &Common, args: &VerifyArgs) -> Result<(), Failure> {
    let report = verify_report(common, args)?;
    emit(common, &report)?;
    if !report.exact {
        return Err(Failure::Check(format!("not exact: max error {:e}", report.max_error)));
    }
    if !report.within_claim {
        return Err(Failure::Check(format!(
            "{} queries exceed the claimed {}",
            report.worst_case_queries, report.claimed_bound
        )));
    }
    Ok(())
}

pub fn gamma_report(args: &GammaArgs) -> Result<GammaReport, Failure> {
    if !(1..=3).contains(&args.d) {
        return Err(Failure::Input(format!("gamma chains exist for d in 1..=3, got {}", args.d)));
    }
    let k0 = args.k0.unwrap_or(if args.d == 3 { 1 } else { 0 });
    let gamma0 = if k0 == 0 { 0.0 } else { unbr_gamma(args.d + 2 * k0, args.d)? };
    let chain = gamma_chain(args.d, k0, gamma0, args.n_max)?;
    Ok(GammaReport {
        d: chain.d,
        k0: chain.k0,
        n_init: chain.n_init,
        valid: chain.valid,
        decays: chain.decays,
        rows: chain.entries,
        tool_version: TOOL_VERSION.into(),
    })
}

pub fn gamma(common: &Common, args: &GammaArgs) -> Result<(), Failure> {
    emit(common, &gamma_report(args)?)
}

fn monomial(mask: u64) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| format!("x{}", i + 1)).collect()
}

fn key_string(key: &OutcomeKey) -> String {
    match key {
        OutcomeKey::Label(l) => l.to_string(),
        OutcomeKey::Pair(i, j) => format!("{{{i},{j}}}"),
        OutcomeKey::Residual => "rest".into(),
    }
}

pub fn poly_report(common: &Common, args: &PolyArgs) -> Result<PolyReport, Failure> {
    let plan = build_plan(&args.plan)?;
    let acc = acceptance_polynomial(&plan)?;
    let q = symmetrize_to_univariate(&acc)?;
    let audit = degree_audit(&plan)?;
    let leaves = if common.verbose {
        let rows = leaf_polynomials(&plan, &[], &Chooser::Canonical)?
            .into_iter()
            .map(|lp| LeafRow {
                path: lp.leaf.path.iter().map(key_string).collect::<Vec<_>>().join(" "),
                label: lp.leaf.label.to_string(),
                degree: lp.poly.degree(EPS_ZERO),
                queries: lp.queries,
            })
            .collect();
        Some(rows)
    } else {
        None
    };
    Ok(PolyReport {
        family: plan.meta.family.clone(),
        params: plan.meta.params.clone(),
        acceptance: acc
            .coeffs
            .iter()
            .filter(|(_, a)| a.norm() > common.tol)
            .map(|(&m, a)| Coefficient { monomial: monomial(m), re: a.re, im: a.im })
            .collect(),
        acceptance_degree: acc.degree(common.tol),
        q_values: q.real_values(),
        q_coeffs: q.coeffs.iter().map(|c| c.re).collect(),
        q_degree: q.degree(common.tol),
        audit_leaves: audit.leaves,
        audit_max_degree: audit.max_degree,
        audit_violations: audit.violations.len(),
        tool_version: TOOL_VERSION.into(),
        leaves,
    })
}

pub fn poly(common: &Common, args: &PolyArgs) -> Result<(), Failure> {
    let report = poly_report(common, args)?;
    emit(common, &report)?;
    if report.audit_violations > 0 {
        return Err(Failure::Check(format!("{} leaves exceed their query count", report.audit_violations)));
    }
    Ok(())
}

fn named(prefix: &str, values: &[f64]) -> Vec<NamedValue> {
    values
        .iter()
        .enumerate()
        .map(|(i, &value)| NamedValue { name: format!("{prefix}{}", i + 1), value })
        .collect()
}

pub fn constants_report(args: &ConstantsArgs) -> Result<ConstantsReport, Failure> {
    if args.base_table {
        let table = consistent_table();
        let residuals = constraint_residuals(&table);
        let sign_adjusted = reference_table()
            .iter()
            .zip(table)
            .enumerate()
            .filter(|(_, (p, c))| *p != c)
            .map(|(i, _)| format!("c{}", i + 1))
            .collect();
        return Ok(ConstantsReport {
            source: "table".into(),
            n: 5,
            d: 3,
            gamma: exactq_core::algorithms::base_table::ENTRY_GAMMA,
            gamma_prev: None,
            constants: named("c", &table),
            max_residual: residuals.iter().fold(0.0, |m, r| m.max(r.abs())),
            residuals: named("C", &residuals),
            sign_adjusted,
            tool_version: TOOL_VERSION.into(),
        });
    }
    let (n, d) = (args.n.unwrap_or_default(), args.d.unwrap_or_default());
    if n == d {
        return Err(Error::DegenerateCase(n).into());
    }
    if d == 0 || n < d + 2 || (n - d) % 2 == 1 {
        return Err(Failure::Input(format!("need d >= 1, n >= d + 2 and n - d even, got n = {n}, d = {d}")));
    }
    let sc = solve_step_constants(n, d, unbr_gamma(n - 2, d)?)?;
    let residuals = sc.residuals();
    Ok(ConstantsReport {
        source: "step".into(),
        n,
        d,
        gamma: sc.gamma,
        gamma_prev: Some(sc.gamma_prev),
        constants: named("c", &sc.c),
        max_residual: sc.max_residual(),
        residuals: named("C", &residuals),
        sign_adjusted: Vec::new(),
        tool_version: TOOL_VERSION.into(),
    })
}

pub fn constants(common: &Common, args: &ConstantsArgs) -> Result<(), Failure> {
    let report = constants_report(args)?;
    emit(common, &report)?;
    if report.max_residual > common.tol {
        return Err(Failure::Check(format!("constraint residual {:e} exceeds {:e}", report.max_residual, common.tol)));
    }
    Ok(())
}
