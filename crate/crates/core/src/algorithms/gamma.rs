// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient `γ` of the recursive-step subroutine on `n` variables given
/// the coefficient `gamma_prev` of the one on `n - 2`:
/// `γ = (n²(n-2)² γ'/(1-γ') + d⁴) / (n² - d²)²`.
pub fn gamma_next(n: usize, d: usize, gamma_prev: f64) -> Result<f64> {
    if n == d {
        return Err(Error::DegenerateCase(n));
    }
    if d == 0 || n < 3 || n < d {
        return Err(Error::Domain(format!("gamma recurrence needs n > d >= 1 and n >= 3, got n = {n}, d = {d}")));
    }
    if gamma_prev.partial_cmp(&1.0) != Some(std::cmp::Ordering::Less) {
        return Err(Error::DivergedChain { n: n - 2, gamma: gamma_prev });
    }
    let (nf, df) = (n as f64, d as f64);
    let num = nf * nf * (nf - 2.0).powi(2) * gamma_prev / (1.0 - gamma_prev) + df.powi(4);
    Ok(num / (nf * nf - df * df).powi(2))
}

/// `n⁴ + (-2d² - 4)n³ + (6d² - d⁴)n² + 4d⁴n - 3d⁴`. Nonnegative exactly when
/// `γ_{n-2} <= 1/(n-2)` forces `γ_n <= 1/n`.
pub fn quartic(n: usize, d: usize) -> f64 {
    let (n, d2) = (n as f64, (d * d) as f64);
    let d4 = d2 * d2;
    n.powi(4) + (-2.0 * d2 - 4.0) * n.powi(3) + (6.0 * d2 - d4) * n * n + 4.0 * d4 * n - 3.0 * d4
}

/// First `n ≡ d (mod 2)` from which the quartic stays nonnegative.
pub fn n_init(d: usize) -> usize {
    // the quartic is eventually positive; past 8d² + 16 it has no roots
    let horizon = 8 * d * d + 16;
    let last_negative = (d + 1..=horizon).rev().find(|&n| quartic(n, d) < 0.0).unwrap_or(d);
    let mut n = last_negative + 1;
    if (n + d) % 2 == 1 {
        n += 1;
    }
    n
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub n: usize,
    pub gamma: f64,
    /// `γ <= 1/n`.
    pub within_inverse_n: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaChain {
    pub d: usize,
    pub k0: usize,
    pub entries: Vec<ChainEntry>,
    /// Every entry has `γ < 1`.
    pub valid: bool,
    /// Every entry with `n >= n_init` has `γ <= 1/n`.
    pub decays: bool,
    pub n_init: usize,
}

impl GammaChain {
    pub fn gamma_at(&self, n: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.n == n).map(|e| e.gamma)
    }
}

/// Iterates the recurrence from the base `n = d + 2 k0` with `gamma0` up to
/// `n_max`.
pub fn gamma_chain(d: usize, k0: usize, gamma0: f64, n_max: usize) -> Result<GammaChain> {
    if d == 0 {
        return Err(Error::Domain("chains need d >= 1".into()));
    }
    let init = n_init(d);
    let mut n = d + 2 * k0;
    let mut gamma = gamma0;
    let mut entries = Vec::new();
    loop {
        if gamma.partial_cmp(&1.0) != Some(std::cmp::Ordering::Less) {
            return Err(Error::DivergedChain { n, gamma });
        }
        entries.push(ChainEntry { n, gamma, within_inverse_n: gamma <= 1.0 / n as f64 });
        if n + 2 > n_max {
            break;
        }
        n += 2;
        gamma = gamma_next(n, d, gamma)?;
    }
    let decays = entries.iter().filter(|e| e.n >= init).all(|e| e.within_inverse_n);
    Ok(GammaChain { d, k0, entries, valid: true, decays, n_init: init })
}
