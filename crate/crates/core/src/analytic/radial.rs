use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analytic::spectrum::SpectrumResult;
use crate::error::{Error, Result};
use crate::laguerre::{laguerre, laguerre_derivative, laguerre_second_derivative};
use crate::model::{xi, PhysicalParameters, QuantumState, Sign};
use crate::quadrature::integrate_checked;

/// Extra Gauss–Laguerre nodes beyond the polynomial degree of the integrand.
const EXTRA_NODES: usize = 6;

/// R_s(ρ) = C_s (2ηρ)^{m_s} e^{−ηρ} L_n^{2m_s}(2ηρ), with C_s fixed by
/// ∫₀^∞ |R_s|² ρ dρ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFunction {
    pub n: u32,
    pub m_s: f64,
    pub eta: f64,
    pub norm: f64,
}

impl RadialFunction {
    /// Radial component `s` of the state whose energy is `spectrum`.
    pub fn new(
        p: &PhysicalParameters,
        q: &QuantumState,
        spectrum: &SpectrumResult,
        s: Sign,
    ) -> Result<Self> {
        let eta = spectrum.eta;
        if !(eta > 0.0) {
            return Err(Error::ContinuumEdge);
        }
        let xi = xi(p, q.mj);
        let m_s = xi - s.value() / 2.0;
        if !(m_s > 0.0) {
            return Err(Error::DegenerateChannel { xi, m_s });
        }
        Self::with_exponent(q.n, m_s, eta)
    }

    pub fn with_exponent(n: u32, m_s: f64, eta: f64) -> Result<Self> {
        if !(eta > 0.0) {
            return Err(Error::ContinuumEdge);
        }
        if !(m_s >= 0.0) {
            return Err(Error::DegenerateChannel { xi: f64::NAN, m_s });
        }
        let ni = i64::from(n);
        let alpha = 2.0 * m_s;
        // ∫|R|²ρ dρ = C²/(4η²) ∫ z^{2m_s+1} e^{−z} [L_n^{2m_s}]² dz
        let integral = integrate_checked(alpha + 1.0, n as usize + EXTRA_NODES, |z| {
            let l = laguerre(ni, alpha, z);
            l * l
        })?;
        let norm = 2.0 * eta / integral.sqrt();
        Ok(RadialFunction { n, m_s, eta, norm })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let z = 2.0 * self.eta * rho;
        if z == 0.0 {
            return if self.m_s > 0.0 { 0.0 } else { self.norm };
        }
        let envelope = (self.m_s * z.ln() - 0.5 * z).exp();
        self.norm * envelope * laguerre(i64::from(self.n), 2.0 * self.m_s, z)
    }

    /// (R, R', R'') divided by the positive factor C ρ^{m_s} e^{−ηρ} (2η)^{m_s}.
    /// Ratios between the three are exact; only the common scale is dropped.
    pub fn reduced_derivatives(&self, rho: f64) -> [f64; 3] {
        let (m, eta) = (self.m_s, self.eta);
        let ni = i64::from(self.n);
        let alpha = 2.0 * m;
        let z = 2.0 * eta * rho;
        let l = laguerre(ni, alpha, z);
        let dl = 2.0 * eta * laguerre_derivative(ni, alpha, z);
        let d2l = 4.0 * eta * eta * laguerre_second_derivative(ni, alpha, z);
        let g = m / rho - eta;
        let r1 = g * l + dl;
        let r2 = (g * g - m / (rho * rho)) * l + 2.0 * g * dl + d2l;
        [l, r1, r2]
    }
}

/// Free-function form of [`RadialFunction::eval`].
pub fn radial_component(
    p: &PhysicalParameters,
    q: &QuantumState,
    spectrum: &SpectrumResult,
    s: Sign,
    rho: f64,
) -> Result<f64> {
    Ok(RadialFunction::new(p, q, spectrum, s)?.eval(rho))
}

/// Upper and lower spinor components at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorValue {
    pub upper: Complex64,
    pub lower: Complex64,
}

/// The two-component bound-state spinor
///
/// ```text
/// upper = e^{−iEt/ħ} e^{i(m_j−1/2)θ} [F_+ − iG_−]
/// lower = e^{−iEt/ħ} e^{i(m_j+1/2)θ} [F_− + iG_+]
/// ```
///
/// `c_plus`/`c_minus` are C̄_s = C_s (2η)^{m_s}/√(2π) with C_s from the
/// normalized radial functions. That fixes the weight of F against G inside
/// each component. Each component is then rescaled on its own so that
/// ∫∫ |component|² ρ dρ dθ = 1.
#[derive(Debug, Clone)]
pub struct SpinorField {
    pub energy: f64,
    pub eta: f64,
    pub mj: f64,
    pub m_plus: f64,
    pub m_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub upper_scale: f64,
    pub lower_scale: f64,
    radial_plus: RadialFunction,
    radial_minus: RadialFunction,
    n: u32,
    hbar: f64,
    c: f64,
    m0: f64,
    kappa: f64,
    coupling: f64,
}

impl SpinorField {
    pub fn new(p: &PhysicalParameters, q: &QuantumState, spectrum: &SpectrumResult) -> Result<Self> {
        let radial_plus = RadialFunction::new(p, q, spectrum, Sign::Plus)?;
        let radial_minus = RadialFunction::new(p, q, spectrum, Sign::Minus)?;
        let eta = spectrum.eta;
        let root = (2.0 * PI).sqrt();
        let c_plus = radial_plus.norm * (2.0 * eta).powf(radial_plus.m_s) / root;
        let c_minus = radial_minus.norm * (2.0 * eta).powf(radial_minus.m_s) / root;
        let mut field = SpinorField {
            energy: spectrum.energy,
            eta,
            mj: q.mj.value(),
            m_plus: radial_plus.m_s,
            m_minus: radial_minus.m_s,
            c_plus,
            c_minus,
            upper_scale: 1.0,
            lower_scale: 1.0,
            radial_plus,
            radial_minus,
            n: q.n,
            hbar: p.hbar,
            c: p.c,
            m0: p.m0,
            kappa: p.kappa,
            coupling: p.dipole_coupling(),
        };
        let (upper, lower) = field.component_norms()?;
        field.upper_scale = 1.0 / (2.0 * PI * upper).sqrt();
        field.lower_scale = 1.0 / (2.0 * PI * lower).sqrt();
        Ok(field)
    }

    fn params(&self, s: Sign) -> (f64, f64) {
        match s {
            Sign::Plus => (self.m_plus, self.c_plus),
            Sign::Minus => (self.m_minus, self.c_minus),
        }
    }

    // F_s and G_s divided by ρ^{m_+−1} e^{−ηρ}. Since m_− = m_+ + 1 the
    // remaining factor is ρ^0 or ρ^1.
    fn reduced_fg(&self, s: Sign, rho: f64) -> (f64, f64) {
        let (m_s, cbar) = self.params(s);
        let sv = s.value();
        let ni = i64::from(self.n);
        let z = 2.0 * self.eta * rho;
        let lift = if s == Sign::Minus { rho } else { 1.0 };
        let l = laguerre(ni, 2.0 * m_s, z);
        let f = cbar * lift * l * ((sv * self.energy / self.c + self.m0 * self.c) * rho - self.kappa * self.c);
        let b = m_s - sv * self.mj + 0.5 + sv * self.coupling;
        let g = self.hbar
            * cbar
            * lift
            * (l * b - 2.0 * self.eta * rho * laguerre(ni - 1, 2.0 * m_s + 1.0, z));
        (f, g)
    }

    // ρ^{m_+−1} e^{−ηρ}; at ρ = 0 this is 0, 1 or ∞ depending on m_+.
    fn envelope(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0f64.powf(self.m_plus - 1.0);
        }
        ((self.m_plus - 1.0) * rho.ln() - self.eta * rho).exp()
    }

    /// F_s(ρ) with the C̄_s normalization.
    pub fn f(&self, s: Sign, rho: f64) -> f64 {
        self.envelope(rho) * self.reduced_fg(s, rho).0
    }

    /// G_s(ρ) with the C̄_s normalization.
    pub fn g(&self, s: Sign, rho: f64) -> f64 {
        self.envelope(rho) * self.reduced_fg(s, rho).1
    }

    // ∫ (F_+² + G_−²) ρ dρ and ∫ (F_−² + G_+²) ρ dρ. Both integrands are
    // ρ^{2m_+−1} e^{−2ηρ} times a polynomial.
    fn component_norms(&self) -> Result<(f64, f64)> {
        let beta = 2.0 * self.m_plus - 1.0;
        let two_eta = 2.0 * self.eta;
        let jac = two_eta.powf(-beta - 1.0);
        let nodes = self.n as usize + EXTRA_NODES;
        let upper = integrate_checked(beta, nodes, |z| {
            let rho = z / two_eta;
            let f = self.reduced_fg(Sign::Plus, rho).0;
            let g = self.reduced_fg(Sign::Minus, rho).1;
            f * f + g * g
        })?;
        let lower = integrate_checked(beta, nodes, |z| {
            let rho = z / two_eta;
            let f = self.reduced_fg(Sign::Minus, rho).0;
            let g = self.reduced_fg(Sign::Plus, rho).1;
            f * f + g * g
        })?;
        Ok((upper * jac, lower * jac))
    }

    /// Ψ_D(t, ρ, θ).
    pub fn eval(&self, t: f64, rho: f64, theta: f64) -> SpinorValue {
        let time_phase = -self.energy * t / self.hbar;
        let up_phase = Complex64::from_polar(1.0, time_phase + (self.mj - 0.5) * theta);
        let low_phase = Complex64::from_polar(1.0, time_phase + (self.mj + 0.5) * theta);
        let env = self.envelope(rho);
        let (fp, gp) = self.reduced_fg(Sign::Plus, rho);
        let (fm, gm) = self.reduced_fg(Sign::Minus, rho);
        let upper = up_phase * Complex64::new(fp, -gm) * (env * self.upper_scale);
        let lower = low_phase * Complex64::new(fm, gp) * (env * self.lower_scale);
        SpinorValue { upper, lower }
    }

    /// The rotated spinor φ = e^{i(m_jθ − Et/ħ)}/√(2π) (R_+, R_−).
    pub fn rotated(&self, t: f64, rho: f64, theta: f64) -> SpinorValue {
        let phase = Complex64::from_polar(
            1.0 / (2.0 * PI).sqrt(),
            self.mj * theta - self.energy * t / self.hbar,
        );
        SpinorValue {
            upper: phase * self.radial_plus.eval(rho),
            lower: phase * self.radial_minus.eval(rho),
        }
    }

    pub fn radial(&self, s: Sign) -> &RadialFunction {
        match s {
            Sign::Plus => &self.radial_plus,
            Sign::Minus => &self.radial_minus,
        }
    }
}

/// Free-function form of [`SpinorField::eval`].
pub fn spinor_eval(
    p: &PhysicalParameters,
    q: &QuantumState,
    spectrum: &SpectrumResult,
    t: f64,
    rho: f64,
    theta: f64,
) -> Result<SpinorValue> {
    Ok(SpinorField::new(p, q, spectrum)?.eval(t, rho, theta))
}
