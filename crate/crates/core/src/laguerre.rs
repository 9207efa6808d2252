//! Generalized Laguerre polynomials L_n^α(x).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree and order of a generalized Laguerre polynomial.
///
/// `degree == -1` is the zero polynomial, so that L_{n−1}^{α+1} terms vanish
/// uniformly at n = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreSpec {
    pub degree: i64,
    pub alpha: f64,
}

impl LaguerreSpec {
    pub fn new(degree: i64, alpha: f64) -> Result<Self> {
        if degree < -1 {
            return Err(Error::invalid(format!("Laguerre degree must be >= -1, got {degree}")));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("Laguerre order must be > -1, got {alpha}")));
        }
        Ok(LaguerreSpec { degree, alpha })
    }

    pub fn eval(&self, x: f64) -> f64 {
        laguerre(self.degree, self.alpha, x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        laguerre_derivative(self.degree, self.alpha, x)
    }
}

/// L_n^α(x) by the three-term recurrence
/// k L_k = (2k − 1 + α − x) L_{k−1} − (k − 1 + α) L_{k−2}.
pub fn laguerre(n: i64, alpha: f64, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 1..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0 + alpha - x) * cur - (kf - 1.0 + alpha) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx L_n^α(x) = −L_{n−1}^{α+1}(x).
pub fn laguerre_derivative(n: i64, alpha: f64, x: f64) -> f64 {
    -laguerre(n - 1, alpha + 1.0, x)
}

/// d²/dx² L_n^α(x) = L_{n−2}^{α+2}(x).
pub fn laguerre_second_derivative(n: i64, alpha: f64, x: f64) -> f64 {
    laguerre(n - 2, alpha + 2.0, x)
}

/// Values L_0^α(x) ..= L_n^α(x) in one pass.
pub fn laguerre_sequence(n: usize, alpha: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    for k in 1..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0 + alpha - x) * cur - (kf - 1.0 + alpha) * prev) / kf;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}
