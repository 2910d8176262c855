// SPDX-License-Identifier: Apache-2.0

//! Constants of one recursive step of the precomputed-state subroutine.

use serde::{Deserialize, Serialize};

use super::gamma::gamma_next;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepConstants {
    pub n: usize,
    pub d: usize,
    pub gamma: f64,
    pub gamma_prev: f64,
    /// `c[0]` is `c1`, ..., `c[10]` is `c11`.
    pub c: [f64; 11],
}

impl StepConstants {
    /// `c_i`, 1-based.
    pub fn get(&self, i: usize) -> f64 {
        self.c[i - 1]
    }

    pub fn set(&mut self, i: usize, value: f64) {
        self.c[i - 1] = value;
    }

    /// Residuals of constraints C1..C12, in order.
    pub fn residuals(&self) -> [f64; 12] {
        let c = |i: usize| self.get(i);
        let n = self.n as f64;
        let (rn, rn2) = (n.sqrt(), (n - 2.0).sqrt());
        let d2 = (self.d * self.d) as f64;
        [
            c(1) * c(1) + c(2) * c(2) - self.gamma,
            c(3) * n - c(3) * c(4) - rn,
            c(3) * c(4) + c(1) * rn,
            c(2) - c(5) * rn2,
            c(3) - c(6) * rn,
            c(5) - c(9) * rn2,
            c(3) * c(4) * n - c(6) * c(7) * rn,
            c(3) - c(8) * rn,
            c(5) - c(10) * rn2,
            c(8) * c(8) + c(9) * c(9) - c(11) * c(11),
            c(10) - c(11) * self.gamma_prev.sqrt(),
            c(7) - d2,
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals().iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

/// Closed-form solution with signs `c1 <= 0`, `c2 >= 0`, `c3 > 0`.
pub fn solve_step_constants(n: usize, d: usize, gamma_prev: f64) -> Result<StepConstants> {
    let gamma = gamma_next(n, d, gamma_prev)?;
    if gamma.partial_cmp(&1.0) != Some(std::cmp::Ordering::Less) {
        return Err(Error::DivergedChain { n, gamma });
    }
    let mut sc = solve_with_target(n, d, gamma_prev, (d * d) as f64);
    sc.gamma = gamma;
    Ok(sc)
}

/// Solves C1..C11 with `c7` pinned to `c7` instead of `d²`. Only
/// `c7 = d²` yields a correct algorithm; other targets build mutants.
pub fn solve_with_target(n: usize, d: usize, gamma_prev: f64, c7: f64) -> StepConstants {
    let nf = n as f64;
    let (rn, rn2) = (nf.sqrt(), (nf - 2.0).sqrt());
    let c4 = c7 / nf;
    let c3 = rn / (nf - c4);
    let c1 = -c3 * c4 / rn;
    let c8 = c3 / rn;
    let c6 = c8;
    let c2 = (nf - 2.0) * c8 * (gamma_prev / (1.0 - gamma_prev)).sqrt();
    let c5 = c2 / rn2;
    let c9 = c5 / rn2;
    let c10 = c9;
    let c11 = c8.hypot(c9);
    StepConstants {
        n,
        d,
        gamma: c1 * c1 + c2 * c2,
        gamma_prev,
        c: [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_d1() {
        let sc = solve_step_constants(3, 1, 0.0).unwrap();
        assert!((sc.get(4) - 1.0 / 3.0).abs() < 1e-15);
        assert!((sc.get(3) - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-15);
        assert!((sc.get(1) + 1.0 / 8.0).abs() < 1e-15);
        assert_eq!(sc.get(2), 0.0);
        assert!((sc.gamma - 1.0 / 64.0).abs() < 1e-15);
        assert!(sc.max_residual() < 1e-12);
    }

    #[test]
    fn n4_d2() {
        let sc = solve_step_constants(4, 2, 0.0).unwrap();
        assert!((sc.get(1) + 1.0 / 3.0).abs() < 1e-15);
        assert!((sc.gamma - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate() {
        assert_eq!(solve_step_constants(3, 3, 0.0), Err(Error::DegenerateCase(3)));
    }
}
