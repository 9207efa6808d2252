use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::spectrum::relativistic_energy;
use crate::error::{Error, Result};
use crate::laguerre::laguerre;
use crate::model::{HalfInteger, PhysicalParameters, QuantumState, Sign};
use crate::quadrature::integrate_checked;

/// Which denominator the nonrelativistic level formula uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonRelVariant {
    /// n + m + 1/2 − dλ_m/ħ, the first-order Taylor form as printed.
    #[default]
    Printed,
    /// n + |m + 1/2 − dλ_m/ħ|, the same expansion keeping the square root.
    Absolute,
    /// n + |l| + 1/2 with l = m − dλ_m/ħ, the exact Coulomb-like quantization
    /// of the radial Schrödinger equation.
    Exact,
}

impl std::str::FromStr for NonRelVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(NonRelVariant::Printed),
            "absolute" => Ok(NonRelVariant::Absolute),
            "exact" => Ok(NonRelVariant::Exact),
            other => Err(Error::invalid(format!(
                "unknown variant {other:?} (printed|absolute|exact)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonRelResult {
    pub n: u32,
    /// Orbital magnetic quantum number.
    pub m: i64,
    /// ε_{n,m}.
    pub epsilon: f64,
    /// l = m − dλ_m/ħ.
    pub l: f64,
    /// η̄ = √(−2m₀ε)/ħ.
    pub eta_bar: f64,
    pub denominator: f64,
    pub variant: NonRelVariant,
}

/// ε = −(1/2) m₀c⁴κ² / (ħ² (n + m + 1/2 − dλ_m/ħ)²).
pub fn nonrel_energy(p: &PhysicalParameters, n: u32, m: i64) -> Result<NonRelResult> {
    nonrel_energy_variant(p, n, m, NonRelVariant::Printed)
}

pub fn nonrel_energy_variant(
    p: &PhysicalParameters,
    n: u32,
    m: i64,
    variant: NonRelVariant,
) -> Result<NonRelResult> {
    p.validate()?;
    let coupling = p.dipole_coupling();
    let l = m as f64 - coupling;
    let nf = f64::from(n);
    let denominator = match variant {
        NonRelVariant::Printed => nf + m as f64 + 0.5 - coupling,
        NonRelVariant::Absolute => nf + (m as f64 + 0.5 - coupling).abs(),
        NonRelVariant::Exact => nf + l.abs() + 0.5,
    };
    if denominator == 0.0 {
        return Err(Error::SpectrumDivergence);
    }
    let c2 = p.c * p.c;
    let epsilon = if p.kappa == 0.0 {
        0.0
    } else {
        -0.5 * p.m0 * c2 * c2 * p.kappa * p.kappa / (p.hbar * p.hbar * denominator * denominator)
    };
    let eta_bar = (-2.0 * p.m0 * epsilon).sqrt() / p.hbar;
    Ok(NonRelResult {
        n,
        m,
        epsilon,
        l,
        eta_bar,
        denominator,
        variant,
    })
}

/// ψ_S(ρ) ∝ ρ^{|l|} e^{−η̄ρ} L_n^{2|l|}(2η̄ρ), normalized so that
/// ∫₀^∞ |ψ_S|² ρ dρ = 1, and Ψ_S = e^{i(mθ − εt/ħ)} ψ_S/√(2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonRelWaveFunction {
    pub result: NonRelResult,
    pub norm: f64,
    hbar: f64,
}

impl NonRelWaveFunction {
    pub fn new(p: &PhysicalParameters, result: &NonRelResult) -> Result<Self> {
        if !(result.epsilon < 0.0) || !(result.eta_bar > 0.0) {
            return Err(Error::ContinuumEdge);
        }
        let alpha = 2.0 * result.l.abs();
        let ni = i64::from(result.n);
        let integral = integrate_checked(alpha + 1.0, result.n as usize + 6, |z| {
            let v = laguerre(ni, alpha, z);
            v * v
        })?;
        Ok(NonRelWaveFunction {
            result: *result,
            norm: 2.0 * result.eta_bar / integral.sqrt(),
            hbar: p.hbar,
        })
    }

    pub fn radial(&self, rho: f64) -> f64 {
        let a = self.result.l.abs();
        let z = 2.0 * self.result.eta_bar * rho;
        let env = if z == 0.0 {
            if a == 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            (a * z.ln() - 0.5 * z).exp()
        };
        self.norm * env * laguerre(i64::from(self.result.n), 2.0 * a, z)
    }

    pub fn eval(&self, t: f64, rho: f64, theta: f64) -> Complex64 {
        let r = &self.result;
        let phase = Complex64::from_polar(
            1.0 / (2.0 * PI).sqrt(),
            r.m as f64 * theta - r.epsilon * t / self.hbar,
        );
        phase * self.radial(rho)
    }
}

pub fn nonrel_wavefunction(
    p: &PhysicalParameters,
    result: &NonRelResult,
    t: f64,
    rho: f64,
    theta: f64,
) -> Result<Complex64> {
    Ok(NonRelWaveFunction::new(p, result)?.eval(t, rho, theta))
}

/// Relativistic binding energy against the nonrelativistic level for the
/// same state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonRelLimit {
    pub e_minus_rest: f64,
    pub epsilon: f64,
    pub gap: f64,
}

/// Compares E − m₀c² (s = +1, particle branch) with ε at m = m_j − 1/2.
pub fn nonrel_limit_check(p: &PhysicalParameters, mj: HalfInteger, n: u32) -> Result<NonRelLimit> {
    let q = QuantumState::new(n, mj, Sign::Plus, Sign::Plus);
    let rel = relativistic_energy(p, &q)?;
    let nr = nonrel_energy(p, n, mj.orbital())?;
    Ok(NonRelLimit {
        e_minus_rest: rel.binding_energy,
        epsilon: nr.epsilon,
        gap: rel.binding_energy - nr.epsilon,
    })
}
