use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DerivedQuantities, HalfInteger, PhysicalParameters, QuantumState, Sign};

/// A relativistic bound-state energy with the quantities that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub state: QuantumState,
    /// Signed energy E^±.
    pub energy: f64,
    /// |E| − m₀c², evaluated without cancellation.
    pub binding_energy: f64,
    /// η at this energy; zero at the continuum edge.
    pub eta: f64,
    /// ρ₀/(2η), `None` when η = 0.
    pub z0: Option<f64>,
    pub derived: DerivedQuantities,
    /// κ = 0: the state sits at E = ±m₀c².
    pub continuum_edge: bool,
}

impl SpectrumResult {
    /// n + m_s + 1/2, the value z₀ must take on a quantized level.
    pub fn quantized_z0(&self) -> f64 {
        f64::from(self.state.n) + self.derived.m_s + 0.5
    }
}

/// E^± = ±m₀c² √(1 − [κc / (ħ(n + (1−s)/2 + ξ))]²).
pub fn relativistic_energy(p: &PhysicalParameters, q: &QuantumState) -> Result<SpectrumResult> {
    spectrum_with_coupling(p, q, p.dipole_coupling())
}

/// φ_HMW = −4π dλ_m/(ħc).
pub fn hmw_phase(p: &PhysicalParameters) -> f64 {
    -4.0 * PI * p.d * p.lambda_m / (p.hbar * p.c)
}

/// The spectrum with −dλ_m/ħ written as cφ/(4π) for a given phase φ.
pub fn relativistic_energy_from_phase(
    p: &PhysicalParameters,
    q: &QuantumState,
    phase: f64,
) -> Result<SpectrumResult> {
    spectrum_with_coupling(p, q, -p.c * phase / (4.0 * PI))
}

// `coupling` stands for dλ_m/ħ.
fn spectrum_with_coupling(
    p: &PhysicalParameters,
    q: &QuantumState,
    coupling: f64,
) -> Result<SpectrumResult> {
    p.validate()?;
    if !coupling.is_finite() {
        return Err(Error::invalid("non-finite dipole coupling"));
    }
    let shift = q.mj.value() - coupling;
    let k = p.reduced_kappa();
    let xi = shift.hypot(k);
    let m_s = xi - q.s.value() / 2.0;
    if !(m_s > 0.0) {
        return Err(Error::DegenerateChannel { xi, m_s });
    }
    let rest = p.rest_energy();
    let rho0 = p.rho0();
    let mut derived = DerivedQuantities {
        xi,
        m_s,
        rho0,
        eta: None,
        z0: None,
    };
    let sign = q.branch.value();

    if k == 0.0 {
        derived.eta = Some(0.0);
        return Ok(SpectrumResult {
            state: *q,
            energy: sign * rest,
            binding_energy: 0.0,
            eta: 0.0,
            z0: None,
            derived,
            continuum_edge: true,
        });
    }

    let offset = f64::from(q.n) + (1.0 - q.s.value()) / 2.0;
    let denom = offset + xi;
    // denom − k = offset + shift²/(ξ + k), exact in real arithmetic
    let gap = offset + shift * shift / (xi + k);
    let ratio = k / denom;
    let energy = sign * rest * (gap * (denom + k)).sqrt() / denom;
    let u = ratio * ratio;
    let binding_energy = -rest * u / (1.0 + (1.0 - u).sqrt());
    let eta = rest * ratio / (p.hbar * p.c);
    let z0 = rho0 / (2.0 * eta);
    derived.eta = Some(eta);
    derived.z0 = Some(z0);
    Ok(SpectrumResult {
        state: *q,
        energy,
        binding_energy,
        eta,
        z0: Some(z0),
        derived,
        continuum_edge: false,
    })
}

/// One row of the eight-way (m_j sign, s, σ) classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SettingRow {
    /// 1-based setting number.
    pub setting: u8,
    pub mj: HalfInteger,
    pub s: Sign,
    pub sigma: Sign,
    pub spectrum: SpectrumResult,
}

/// (m_j sign, s, σ) in table order.
pub const SETTINGS: [(Sign, Sign, Sign); 8] = [
    (Sign::Plus, Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Plus, Sign::Minus),
    (Sign::Plus, Sign::Minus, Sign::Plus),
    (Sign::Plus, Sign::Minus, Sign::Minus),
    (Sign::Minus, Sign::Plus, Sign::Plus),
    (Sign::Minus, Sign::Plus, Sign::Minus),
    (Sign::Minus, Sign::Minus, Sign::Plus),
    (Sign::Minus, Sign::Minus, Sign::Minus),
];

/// All eight settings for |d| taken from `p`, a radial number `n` and |m_j|.
/// Energies are on the particle branch; the antiparticle has the same modulus.
pub fn settings_table(
    p: &PhysicalParameters,
    n: u32,
    mj_abs: HalfInteger,
) -> Result<[SettingRow; 8]> {
    let d_abs = p.d.abs();
    let mj_abs = mj_abs.abs();
    let mut rows = Vec::with_capacity(8);
    for (i, &(mj_sign, s, sigma)) in SETTINGS.iter().enumerate() {
        let mj = match mj_sign {
            Sign::Plus => mj_abs,
            Sign::Minus => -mj_abs,
        };
        let pp = p.with_d(sigma.value() * d_abs)?;
        let q = QuantumState::new(n, mj, s, Sign::Plus);
        rows.push(SettingRow {
            setting: i as u8 + 1,
            mj,
            s,
            sigma,
            spectrum: relativistic_energy(&pp, &q)?,
        });
    }
    Ok(rows.try_into().expect("eight rows"))
}
