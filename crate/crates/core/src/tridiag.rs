//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

/// Symmetric tridiagonal matrix: `diag[i]` on the diagonal and `off[i]`
/// coupling rows `i` and `i + 1`.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        SymTridiagonal { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let e = self.off[i - 1];
            if q == 0.0 {
                q = f64::EPSILON * (e.abs() + self.diag[i - 1].abs()).max(f64::MIN_POSITIVE);
            }
            q = self.diag[i] - x - e * e / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based), bisected until the
    /// bracket cannot shrink further in floating point.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        assert!(index < self.len(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        (0..k.min(self.len())).map(|i| self.eigenvalue(i)).collect()
    }

    /// Unit eigenvector for an eigenvalue estimate, by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let scale = self
            .diag
            .iter()
            .chain(self.off.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let tiny = f64::EPSILON * scale;
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..4 {
            v = self.shifted_solve(lambda, &v, tiny);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    // Thomas algorithm on (T − μI) x = b, with zero pivots nudged to `tiny`.
    fn shifted_solve(&self, mu: f64, b: &[f64], tiny: f64) -> Vec<f64> {
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut piv = self.diag[0] - mu;
        if piv.abs() < tiny {
            piv = tiny;
        }
        if n > 1 {
            c[0] = self.off[0] / piv;
        }
        d[0] = b[0] / piv;
        for i in 1..n {
            let a = self.off[i - 1];
            piv = self.diag[i] - mu - a * c[i - 1];
            if piv.abs() < tiny {
                piv = tiny;
            }
            if i + 1 < n {
                c[i] = self.off[i] / piv;
            }
            d[i] = (b[i] - a * d[i - 1]) / piv;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    }
}

/// Sign changes along a sampled function, ignoring entries below
/// `threshold · max|v|`.
pub fn sign_changes(v: &[f64], threshold: f64) -> usize {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cut = threshold * peak;
    let mut last = 0.0f64;
    let mut changes = 0;
    for &x in v {
        if x.abs() <= cut {
            continue;
        }
        if last != 0.0 && (x > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = x;
    }
    changes
}
