// SPDX-License-Identifier: Apache-2.0

//! Amplitudes and acceptance probabilities as multilinear polynomials in
//! `x̂`, their symmetrization, and the root-counting degree bound.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::run::{run, trace, Chooser, Memo};
use crate::error::{Error, Result};
use crate::plan::Plan;
use crate::state::{Label, OutcomeKey, EPS_BRANCH};

/// Largest `n` for which polynomials are extracted.
pub const MAX_POLY_N: usize = 14;

/// Values below this are zero in degree scans and root counts.
pub const EPS_ZERO: f64 = 1e-9;

/// `p(x̂) = Σ_S α_S Π_{i∈S} x̂_i`. Bit `i - 1` of a subset mask is variable
/// `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultilinearPoly {
    pub n: usize,
    pub coeffs: BTreeMap<u64, Complex64>,
}

fn fwht(values: &mut [Complex64]) {
    let mut h = 1;
    while h < values.len() {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl MultilinearPoly {
    /// Fourier inversion of a function given on all inputs; `values[x]` is
    /// the value where bit `i - 1` of `x` is `x_i`.
    pub fn from_values(n: usize, values: &[Complex64]) -> Result<Self> {
        if n > MAX_POLY_N {
            return Err(Error::TooLarge { what: "polynomial extraction", n, limit: MAX_POLY_N });
        }
        if values.len() != 1 << n {
            return Err(Error::ArityMismatch { expected: 1 << n, got: values.len() });
        }
        let mut v = values.to_vec();
        fwht(&mut v);
        let scale = 1.0 / (1u64 << n) as f64;
        let coeffs = v
            .into_iter()
            .enumerate()
            .map(|(s, a)| (s as u64, a * scale))
            .filter(|(_, a)| a.norm() > 1e-15)
            .collect();
        Ok(Self { n, coeffs })
    }

    pub fn from_real(n: usize, values: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_values(n, &v)
    }

    pub fn coeff(&self, mask: u64) -> Complex64 {
        self.coeffs.get(&mask).copied().unwrap_or_default()
    }

    /// Largest `|S|` with `|α_S| > tol`; 0 for the zero polynomial.
    pub fn degree(&self, tol: f64) -> usize {
        self.coeffs
            .iter()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.values().all(|a| a.norm() <= tol)
    }

    /// Value at the input whose bits are `x`.
    pub fn evaluate(&self, x: &[bool]) -> Complex64 {
        let xmask: u64 = x.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| 1u64 << i).sum();
        self.coeffs
            .iter()
            .map(|(s, a)| if (s & xmask).count_ones() % 2 == 1 { -a } else { *a })
            .sum()
    }

    /// Values on every input, in input-counter order.
    pub fn values(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::default(); 1 << self.n];
        for (s, a) in &self.coeffs {
            v[*s as usize] = *a;
        }
        fwht(&mut v);
        v
    }
}

/// Symmetrized polynomial as a function of the Hamming weight `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Univariate {
    pub n: usize,
    /// Average of `α_S` over `|S| = t`, for `t = 0..=n`.
    pub level_averages: Vec<Complex64>,
    /// `q(s)` for `s = 0..=n`.
    pub values: Vec<Complex64>,
    /// Monomial coefficients of `q`, lowest degree first.
    pub coeffs: Vec<Complex64>,
}

impl Univariate {
    pub fn degree(&self, tol: f64) -> usize {
        self.coeffs.iter().rposition(|c| c.norm() > tol).unwrap_or(0)
    }

    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }
}

/// `K_t(s) = Σ_j (-1)^j C(s, j) C(n - s, t - j)`, the value of the
/// elementary symmetric polynomial `e_t(x̂)` at weight `s`.
fn krawtchouk(n: usize, t: usize, s: usize) -> f64 {
    (0..=t.min(s))
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(s, j) * binomial(n - s, t - j)
        })
        .sum()
}

/// Monomial coefficients of the interpolant through `(s, values[s])`.
fn interpolate(values: &[Complex64]) -> Vec<Complex64> {
    let m = values.len();
    let mut dd = values.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / level as f64;
        }
    }
    // Horner on the Newton form: p = dd0 + (s - 0)(dd1 + (s - 1)(dd2 + ...))
    let mut coeffs = vec![Complex64::default(); m];
    for k in (0..m).rev() {
        // coeffs <- coeffs * (s - k) + dd[k]
        let mut next = vec![Complex64::default(); m];
        for (i, &c) in coeffs.iter().enumerate() {
            if i + 1 < m {
                next[i + 1] += c;
            }
            next[i] -= c * k as f64;
        }
        next[0] += dd[k];
        coeffs = next;
    }
    coeffs
}

/// Averages `poly` over all variable permutations and expresses the result
/// through `s = (n - Σ x̂)/2`. Cross-checks the Krawtchouk evaluation
/// against direct averages over each weight class.
pub fn symmetrize_to_univariate(poly: &MultilinearPoly) -> Result<Univariate> {
    let n = poly.n;
    let mut sums = vec![Complex64::default(); n + 1];
    for (s, a) in &poly.coeffs {
        sums[s.count_ones() as usize] += a;
    }
    let level_averages: Vec<Complex64> = sums.iter().enumerate().map(|(t, s)| s / binomial(n, t)).collect();
    let values: Vec<Complex64> = (0..=n)
        .map(|s| (0..=n).map(|t| level_averages[t] * krawtchouk(n, t, s)).sum())
        .collect();
    let direct = poly.values();
    let mut class_sum = vec![Complex64::default(); n + 1];
    for (x, v) in direct.iter().enumerate() {
        class_sum[x.count_ones() as usize] += v;
    }
    let residual = (0..=n)
        .map(|s| (class_sum[s] / binomial(n, s) - values[s]).norm())
        .fold(0.0, f64::max);
    if residual > EPS_ZERO {
        return Err(Error::NotSymmetrizable { residual });
    }
    let coeffs = interpolate(&values);
    Ok(Univariate { n, level_averages, values, coeffs })
}

/// Number of points where `|q| < 1e-9`: any polynomial with these values
/// and nonzero at `claimed_nonzero` has at least this degree.
pub fn root_count_lower_bound(q_values: &BTreeMap<usize, f64>, claimed_nonzero: usize) -> Result<usize> {
    let value = q_values.get(&claimed_nonzero).copied().unwrap_or(0.0);
    if value.abs() < EPS_ZERO {
        return Err(Error::ZeroWitnessMissing { point: claimed_nonzero, value });
    }
    Ok(q_values.values().filter(|v| v.abs() < EPS_ZERO).count())
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_POLY_N {
        return Err(Error::TooLarge { what: "polynomial extraction", n, limit: MAX_POLY_N });
    }
    Ok(())
}

fn bits_of(x: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| x >> i & 1 == 1).collect()
}

/// Acceptance probability of `plan` on every input, as a polynomial.
pub fn acceptance_polynomial(plan: &Arc<Plan>) -> Result<MultilinearPoly> {
    let n = plan.n();
    check_n(n)?;
    let mut memo = Memo::default();
    let values = (0..1usize << n)
        .map(|x| run(plan, &bits_of(x, n), EPS_BRANCH, Some(&mut memo)).map(|r| r.acceptance()))
        .collect::<Result<Vec<f64>>>()?;
    MultilinearPoly::from_real(n, &values)
}

/// One basis state at the end of one measurement path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LeafId {
    pub path: Vec<OutcomeKey>,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeafPoly {
    pub leaf: LeafId,
    pub output: Option<bool>,
    pub queries: usize,
    pub poly: MultilinearPoly,
}

fn input_with(n: usize, fixed: &[(usize, bool)], free: &[usize], x: usize) -> Vec<bool> {
    let mut bits = vec![false; n];
    for &(i, b) in fixed {
        bits[i - 1] = b;
    }
    for (pos, &i) in free.iter().enumerate() {
        bits[i - 1] = x >> pos & 1 == 1;
    }
    bits
}

/// Leaf amplitudes over the paths `chooser` admits, as polynomials in the
/// free variables. `fixed` holds `(index, bit)` pairs substituted into the
/// input; the remaining positions, in order, are the variables. Inputs that
/// never reach a leaf contribute zero there.
pub fn leaf_polynomials(plan: &Arc<Plan>, fixed: &[(usize, bool)], chooser: &Chooser) -> Result<Vec<LeafPoly>> {
    let n = plan.n();
    let free: Vec<usize> = (1..=n).filter(|i| !fixed.iter().any(|(j, _)| j == i)).collect();
    let m = free.len();
    check_n(m)?;
    let mut table: HashMap<LeafId, (Option<bool>, usize, Vec<Complex64>)> = HashMap::new();
    for x in 0..1usize << m {
        for rec in trace(plan, &input_with(n, fixed, &free, x), chooser)? {
            for (label, amp) in rec.state.iter() {
                let id = LeafId { path: rec.path.clone(), label: *label };
                let entry = table
                    .entry(id)
                    .or_insert_with(|| (rec.output, rec.queries, vec![Complex64::default(); 1 << m]));
                entry.2[x] += amp;
            }
        }
    }
    let mut out = table
        .into_iter()
        .map(|(leaf, (output, queries, values))| {
            Ok(LeafPoly { leaf, output, queries, poly: MultilinearPoly::from_values(m, &values)? })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.leaf.cmp(&b.leaf));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeAudit {
    pub leaves: usize,
    /// Leaves whose amplitude degree exceeds their path query count.
    pub violations: Vec<(LeafId, usize, usize)>,
    pub max_degree: usize,
}

impl DegreeAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `deg(amplitude) <= queries` for every canonical leaf label.
pub fn degree_audit(plan: &Arc<Plan>) -> Result<DegreeAudit> {
    let leaves = leaf_polynomials(plan, &[], &Chooser::Canonical)?;
    let mut audit = DegreeAudit { leaves: leaves.len(), violations: Vec::new(), max_degree: 0 };
    for lp in leaves {
        let deg = lp.poly.degree(EPS_ZERO);
        audit.max_degree = audit.max_degree.max(deg);
        if deg > lp.queries {
            audit.violations.push((lp.leaf, deg, lp.queries));
        }
    }
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundWitness {
    /// Bits fixed before symmetrizing, as `(index, bit)`.
    pub fixed: Vec<(usize, bool)>,
    pub free_vars: usize,
    pub claimed_nonzero: usize,
    pub leaf: LeafId,
    /// Queries along the chosen leaf's path, an upper bound on `deg q`.
    pub path_queries: usize,
    pub q_values: Vec<f64>,
    pub zeros: usize,
    /// `max(n - k, l) - 1`.
    pub expected: usize,
}

/// Restricts an exact `EXACT_{k,l}` plan to the subcube where it computes
/// a single-sided test, picks an accepting leaf amplitude that is nonzero
/// at the distinguished weight, and counts the zeros of its symmetrization.
pub fn lower_bound_witness(plan: &Arc<Plan>, k: usize, l: usize) -> Result<LowerBoundWitness> {
    let n = plan.n();
    if k >= l || l > n {
        return Err(Error::Domain(format!("need k < l <= n, got n = {n}, k = {k}, l = {l}")));
    }
    let (fixed, claimed): (Vec<(usize, bool)>, usize) = if l <= n - k {
        ((1..=k).map(|i| (i, true)).collect(), 0)
    } else {
        ((1..=n - l).map(|i| (i, false)).collect(), l)
    };
    let free: Vec<usize> = (1..=n).filter(|i| !fixed.iter().any(|(j, _)| j == i)).collect();
    let m = free.len();
    let witness = input_with(n, &fixed, &free, if claimed == 0 { 0 } else { (1usize << m) - 1 });
    let accepting = trace(plan, &witness, &Chooser::All)?
        .into_iter()
        .find(|rec| rec.output == Some(true) && rec.state.squared_norm() > EPS_ZERO)
        .ok_or(Error::ZeroWitnessMissing { point: claimed, value: 0.0 })?;
    let label = accepting
        .state
        .iter()
        .find(|(_, a)| a.norm() > EPS_ZERO)
        .map(|(l, _)| *l)
        .expect("accepting leaf has a sizable amplitude");
    let target = LeafId { path: accepting.path.clone(), label };
    let chosen = leaf_polynomials(plan, &fixed, &Chooser::Path(accepting.path))?
        .into_iter()
        .find(|lp| lp.leaf == target)
        .expect("the witness path is traced");
    let q = symmetrize_to_univariate(&chosen.poly)?;
    let values: BTreeMap<usize, f64> = q.values.iter().enumerate().map(|(s, v)| (s, v.norm())).collect();
    let zeros = root_count_lower_bound(&values, claimed)?;
    Ok(LowerBoundWitness {
        fixed,
        free_vars: m,
        claimed_nonzero: claimed,
        leaf: chosen.leaf,
        path_queries: chosen.queries,
        q_values: q.real_values(),
        zeros,
        expected: (n - k).max(l) - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable() {
        // p = x̂_1 on n = 3
        let vals: Vec<f64> = (0..8).map(|x| if x & 1 == 1 { -1.0 } else { 1.0 }).collect();
        let p = MultilinearPoly::from_real(3, &vals).unwrap();
        assert!((p.coeff(1).re - 1.0).abs() < 1e-15);
        assert_eq!(p.degree(1e-12), 1);
        let q = symmetrize_to_univariate(&p).unwrap();
        for s in 0..=3 {
            assert!((q.values[s].re - (3.0 - 2.0 * s as f64) / 3.0).abs() < 1e-12);
        }
        assert!((q.coeffs[0].re - 1.0).abs() < 1e-12);
        assert!((q.coeffs[1].re + 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = |s: f64| 2.0 - s + 0.5 * s * s * s;
        let vals: Vec<Complex64> = (0..5).map(|s| Complex64::new(f(s as f64), 0.0)).collect();
        let c = interpolate(&vals);
        let expect = [2.0, -1.0, 0.0, 0.5, 0.0];
        for (a, b) in c.iter().zip(expect) {
            assert!((a.re - b).abs() < 1e-10);
        }
    }

    #[test]
    fn root_count_examples() {
        let zeros: BTreeMap<usize, f64> = [(0, 0.5), (1, 0.0), (2, 0.3), (3, 0.0), (4, 0.0), (5, 0.0)].into();
        assert_eq!(root_count_lower_bound(&zeros, 0).unwrap(), 4);
        let none: BTreeMap<usize, f64> = [(0, 1.0), (1, 2.0)].into();
        assert_eq!(root_count_lower_bound(&none, 1).unwrap(), 0);
        assert!(matches!(root_count_lower_bound(&zeros, 1), Err(Error::ZeroWitnessMissing { .. })));
    }
}
