//! Generalized Gauss–Laguerre quadrature for ∫₀^∞ x^α e^{−x} f(x) dx.
//!
//! Nodes are the eigenvalues of the Laguerre Jacobi matrix, found by
//! bisection and polished by Newton on L_n^α. Weights use
//! w_i = Γ(n+α+1) x_i / (n! (n+1)² [L_{n+1}^α(x_i)]²).

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::laguerre::{laguerre, laguerre_derivative};
use crate::tridiag::SymTridiagonal;

/// Relative change tolerated between an n-node and a 2n-node rule.
pub const DOUBLING_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(node_count: usize, alpha: f64) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::invalid("quadrature needs at least one node"));
        }
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::invalid(format!("quadrature order must be > -1, got {alpha}")));
        }
        let n = node_count;
        let diag = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
        let off = (1..n)
            .map(|k| (k as f64 * (k as f64 + alpha)).sqrt())
            .collect();
        let jacobi = SymTridiagonal::new(diag, off);

        let ni = n as i64;
        let log_prefactor = ln_gamma(n as f64 + alpha + 1.0) - ln_gamma(n as f64 + 1.0)
            - 2.0 * ((n + 1) as f64).ln();
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = jacobi.eigenvalue(i);
            for _ in 0..3 {
                let d = laguerre_derivative(ni, alpha, x);
                if d == 0.0 {
                    break;
                }
                let step = laguerre(ni, alpha, x) / d;
                if !step.is_finite() {
                    break;
                }
                x -= step;
            }
            let next = laguerre(ni + 1, alpha, x);
            let w = (log_prefactor + x.ln() - 2.0 * next.abs().ln()).exp();
            nodes.push(x);
            weights.push(w);
        }
        Ok(GaussLaguerre {
            alpha,
            nodes,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Σ w |f|, the scale against which cancellation is judged.
    fn integrate_abs<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x).abs())
            .sum()
    }
}

/// ∫₀^∞ x^α e^{−x} f(x) dx with `node_count` nodes, checked against a rule
/// with twice as many.
pub fn integrate_checked<F: Fn(f64) -> f64>(alpha: f64, node_count: usize, f: F) -> Result<f64> {
    let coarse = GaussLaguerre::new(node_count, alpha)?;
    let fine = GaussLaguerre::new(2 * node_count, alpha)?;
    let a = coarse.integrate(&f);
    let b = fine.integrate(&f);
    let scale = fine.integrate_abs(&f);
    if scale == 0.0 {
        return Ok(b);
    }
    let rel = (a - b).abs() / scale;
    if !(rel <= DOUBLING_TOLERANCE) {
        return Err(Error::QuadratureUnderresolved {
            relative_change: rel,
        });
    }
    Ok(b)
}

/// ∫₀^∞ x^α e^{−x} L_{n1}^α(x) L_{n2}^α(x) dx.
pub fn weighted_inner_product(n1: u32, n2: u32, alpha: f64, node_count: usize) -> Result<f64> {
    let (a, b) = (i64::from(n1), i64::from(n2));
    integrate_checked(alpha, node_count, |x| {
        laguerre(a, alpha, x) * laguerre(b, alpha, x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_gamma() {
        for &alpha in &[0.0, 0.5, 3.0, 12.25] {
            let rule = GaussLaguerre::new(30, alpha).unwrap();
            let total: f64 = rule.weights.iter().sum();
            let expect = ln_gamma(alpha + 1.0).exp();
            assert!(((total - expect) / expect).abs() < 1e-12, "alpha={alpha}");
        }
    }

    #[test]
    fn nodes_are_laguerre_roots() {
        let rule = GaussLaguerre::new(12, 2.5).unwrap();
        for w in rule.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for &x in &rule.nodes {
            let scale = laguerre_derivative(12, 2.5, x).abs() * x.max(1.0);
            assert!(laguerre(12, 2.5, x).abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn inner_products() {
        assert!(weighted_inner_product(0, 1, 1.0, 8).unwrap().abs() < 1e-10);
        assert!((weighted_inner_product(0, 0, 0.0, 8).unwrap() - 1.0).abs() < 1e-10);
        // Γ(6)/2! = 120/2
        let v = weighted_inner_product(2, 2, 3.0, 8).unwrap();
        assert!(((v - 60.0) / 60.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn moments_exact() {
        // ∫ x^α e^{−x} x^k = Γ(α+k+1)
        let alpha = 1.7;
        let rule = GaussLaguerre::new(10, alpha).unwrap();
        for k in 0..19 {
            let got = rule.integrate(|x| x.powi(k));
            let expect = ln_gamma(alpha + k as f64 + 1.0).exp();
            assert!(((got - expect) / expect).abs() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn underresolved_is_reported() {
        // Degree 40 integrand, 3 nodes exact only to degree 5.
        let err = weighted_inner_product(20, 20, 0.5, 3).unwrap_err();
        assert!(matches!(err, Error::QuadratureUnderresolved { .. }));
    }

    #[test]
    fn rejects_bad_rules() {
        assert!(GaussLaguerre::new(0, 1.0).is_err());
        assert!(GaussLaguerre::new(4, -1.5).is_err());
    }
}
