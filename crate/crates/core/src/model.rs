//! Physical parameters, quantum numbers and the derived scalars shared by
//! every closed-form expression.
//!
//! The unit system is whatever the caller feeds in. [`PhysicalParameters::natural`]
//! gives the ħ = c = m₀ = 1 system used by the figure sweeps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ±1 selector. Used for the spinorial parameter `s`, the energy branch and
/// the EDM sign σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(x: f64) -> Self {
        if x.is_sign_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::invalid(format!("sign must be +1 or -1, got {other}"))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        match s {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(Error::invalid(format!("expected +1 or -1, got {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A half-odd-integer stored as its odd numerator over 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub fn from_numerator(numerator: i32) -> Result<Self> {
        if numerator % 2 == 0 {
            return Err(Error::invalid(format!(
                "m_j numerator must be odd, got {numerator}"
            )));
        }
        Ok(HalfInteger(numerator))
    }

    pub fn numerator(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInteger(self.0.abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Orbital number m = m_j − 1/2.
    pub fn orbital(self) -> i64 {
        (i64::from(self.0) - 1) / 2
    }

    /// m_j = m + 1/2 for an integer orbital number.
    pub fn from_orbital(m: i64) -> Result<Self> {
        let num = 2 * m + 1;
        i32::try_from(num)
            .map(HalfInteger)
            .map_err(|_| Error::invalid(format!("orbital number {m} out of range")))
    }
}

impl std::ops::Neg for HalfInteger {
    type Output = Self;

    fn neg(self) -> Self {
        HalfInteger(-self.0)
    }
}

impl TryFrom<i32> for HalfInteger {
    type Error = Error;

    fn try_from(v: i32) -> Result<Self> {
        HalfInteger::from_numerator(v)
    }
}

impl From<HalfInteger> for i32 {
    fn from(h: HalfInteger) -> i32 {
        h.0
    }
}

/// Parses `"1/2"`, `"-3/2"`, `"+5/2"`. The `/2` is mandatory.
impl FromStr for HalfInteger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::invalid(format!("m_j must be a fraction like 1/2, got {s:?}")))?;
        let num: i32 = num
            .trim()
            .trim_start_matches('+')
            .parse()
            .map_err(|_| Error::invalid(format!("bad m_j numerator in {s:?}")))?;
        if den.trim() != "2" {
            return Err(Error::invalid(format!("m_j denominator must be 2, got {s:?}")));
        }
        HalfInteger::from_numerator(num)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalParameters {
    /// Rest mass m₀.
    pub m0: f64,
    /// Speed of light.
    pub c: f64,
    /// Reduced Planck constant.
    pub hbar: f64,
    /// Signed electric dipole moment d = σ|d|.
    pub d: f64,
    /// Magnetic charge density λ_m.
    pub lambda_m: f64,
    /// Position-dependent-mass parameter κ in m(ρ) = m₀ − κ/ρ.
    pub kappa: f64,
}

impl PhysicalParameters {
    pub fn new(m0: f64, c: f64, hbar: f64, d: f64, lambda_m: f64, kappa: f64) -> Result<Self> {
        let p = PhysicalParameters {
            m0,
            c,
            hbar,
            d,
            lambda_m,
            kappa,
        };
        p.validate()?;
        Ok(p)
    }

    /// ħ = c = m₀ = 1.
    pub fn natural(d: f64, lambda_m: f64, kappa: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, d, lambda_m, kappa)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [("m0", self.m0), ("c", self.c), ("hbar", self.hbar)];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if !self.d.is_finite() {
            return Err(Error::invalid(format!("d must be finite, got {}", self.d)));
        }
        let nonneg = [("lambda_m", self.lambda_m), ("kappa", self.kappa)];
        for (name, v) in nonneg {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// EDM sign σ. `d = 0` reports `Plus`.
    pub fn sigma(&self) -> Sign {
        Sign::of(self.d)
    }

    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }

    /// The dimensionless EDM–monopole coupling dλ_m/ħ.
    pub fn dipole_coupling(&self) -> f64 {
        self.d * self.lambda_m / self.hbar
    }

    /// κc/ħ.
    pub fn reduced_kappa(&self) -> f64 {
        self.kappa * self.c / self.hbar
    }

    /// ρ₀ = 2m₀c²κ/ħ².
    pub fn rho0(&self) -> f64 {
        2.0 * self.m0 * self.c * self.c * self.kappa / (self.hbar * self.hbar)
    }

    pub fn with_kappa(self, kappa: f64) -> Result<Self> {
        Self::new(self.m0, self.c, self.hbar, self.d, self.lambda_m, kappa)
    }

    pub fn with_lambda_m(self, lambda_m: f64) -> Result<Self> {
        Self::new(self.m0, self.c, self.hbar, self.d, lambda_m, self.kappa)
    }

    pub fn with_d(self, d: f64) -> Result<Self> {
        Self::new(self.m0, self.c, self.hbar, d, self.lambda_m, self.kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumState {
    /// Radial quantum number.
    pub n: u32,
    /// Total magnetic quantum number.
    #[serde(rename = "mj_numerator")]
    pub mj: HalfInteger,
    /// Spinorial parameter: +1 upper component, −1 lower.
    pub s: Sign,
    /// +1 particle, −1 antiparticle.
    pub branch: Sign,
}

impl QuantumState {
    pub fn new(n: u32, mj: HalfInteger, s: Sign, branch: Sign) -> Self {
        QuantumState { n, mj, s, branch }
    }

    pub fn with_n(self, n: u32) -> Self {
        QuantumState { n, ..self }
    }

    pub fn with_s(self, s: Sign) -> Self {
        QuantumState { s, ..self }
    }

    pub fn with_branch(self, branch: Sign) -> Self {
        QuantumState { branch, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedQuantities {
    /// ξ = √((m_j − dλ_m/ħ)² + (κc/ħ)²).
    pub xi: f64,
    /// m_s = ξ − s/2.
    pub m_s: f64,
    /// ρ₀ = 2m₀c²κ/ħ².
    pub rho0: f64,
    /// Decay constant; unset until an energy is known.
    pub eta: Option<f64>,
    /// z₀ = ρ₀/(2η); unset until an energy is known.
    pub z0: Option<f64>,
}

/// ξ for a given m_j, independent of `s`.
pub fn xi(p: &PhysicalParameters, mj: HalfInteger) -> f64 {
    (mj.value() - p.dipole_coupling()).hypot(p.reduced_kappa())
}

pub fn derive_quantities(p: &PhysicalParameters, q: &QuantumState) -> Result<DerivedQuantities> {
    p.validate()?;
    let xi = xi(p, q.mj);
    let m_s = xi - q.s.value() / 2.0;
    if !(m_s > 0.0) {
        return Err(Error::DegenerateChannel { xi, m_s });
    }
    Ok(DerivedQuantities {
        xi,
        m_s,
        rho0: p.rho0(),
        eta: None,
        z0: None,
    })
}

/// η = √(m₀²c⁴ − E²)/(ħc).
pub fn eta_from_energy(p: &PhysicalParameters, energy: f64) -> Result<f64> {
    let rest = p.rest_energy();
    if !(energy.abs() <= rest) {
        return Err(Error::NotBound {
            energy,
            rest_energy: rest,
        });
    }
    let e = energy.abs();
    Ok(((rest - e) * (rest + e)).sqrt() / (p.hbar * p.c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(mj: i32, s: Sign) -> QuantumState {
        QuantumState::new(0, HalfInteger::from_numerator(mj).unwrap(), s, Sign::Plus)
    }

    #[test]
    fn degenerate_at_boundary() {
        let p = PhysicalParameters::natural(0.0, 0.0, 0.0).unwrap();
        let err = derive_quantities(&p, &state(1, Sign::Plus)).unwrap_err();
        assert!(matches!(err, Error::DegenerateChannel { xi, m_s } if xi == 0.5 && m_s == 0.0));
    }

    #[test]
    fn xi_sqrt_two() {
        // m_j − dλ/ħ = 1/2 + 1/2 = 1
        let p = PhysicalParameters::natural(-1.0, 0.5, 1.0).unwrap();
        let dq = derive_quantities(&p, &state(1, Sign::Plus)).unwrap();
        assert!((dq.xi - 2f64.sqrt()).abs() < 1e-15);
        assert!((dq.m_s - (2f64.sqrt() - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn xi_five_halves() {
        let p = PhysicalParameters::natural(-1.0, 1.0, 2.0).unwrap();
        let dq = derive_quantities(&p, &state(1, Sign::Minus)).unwrap();
        assert_eq!(dq.xi, 2.5);
        assert_eq!(dq.m_s, 3.0);
        assert_eq!(dq.rho0, 4.0);
    }

    #[test]
    fn eta_edges() {
        let p = PhysicalParameters::natural(0.0, 0.0, 1.0).unwrap();
        assert_eq!(eta_from_energy(&p, 1.0).unwrap(), 0.0);
        let eta = eta_from_energy(&p, 1.0 / 2f64.sqrt()).unwrap();
        assert!((eta - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            eta_from_energy(&p, 1.5),
            Err(Error::NotBound { .. })
        ));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PhysicalParameters::natural(0.0, -1.0, 0.0).is_err());
        assert!(PhysicalParameters::natural(0.0, 0.0, -0.1).is_err());
        assert!(PhysicalParameters::new(0.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(PhysicalParameters::new(1.0, 1.0, f64::NAN, 0.0, 0.0, 0.0).is_err());
        assert!(HalfInteger::from_numerator(2).is_err());
    }

    #[test]
    fn half_integer_parsing() {
        assert_eq!("1/2".parse::<HalfInteger>().unwrap().numerator(), 1);
        assert_eq!("-3/2".parse::<HalfInteger>().unwrap().numerator(), -3);
        assert_eq!("+5/2".parse::<HalfInteger>().unwrap().numerator(), 5);
        assert!("1/3".parse::<HalfInteger>().is_err());
        assert!("2/2".parse::<HalfInteger>().is_err());
        assert!("0.5".parse::<HalfInteger>().is_err());
        assert_eq!(HalfInteger::from_numerator(-1).unwrap().orbital(), -1);
        assert_eq!(HalfInteger::from_numerator(1).unwrap().orbital(), 0);
        assert_eq!(HalfInteger::from_orbital(-2).unwrap().numerator(), -3);
    }

    #[test]
    fn json_schema() {
        let p: PhysicalParameters = serde_json::from_str(
            r#"{"m0":1,"c":1,"hbar":1,"d":-1,"lambda_m":1,"kappa":2}"#,
        )
        .unwrap();
        assert_eq!(p.kappa, 2.0);
        let q: QuantumState =
            serde_json::from_str(r#"{"n":1,"mj_numerator":-3,"s":-1,"branch":1}"#).unwrap();
        assert_eq!(q.mj.value(), -1.5);
        assert_eq!(q.s, Sign::Minus);
        assert!(serde_json::from_str::<QuantumState>(
            r#"{"n":1,"mj_numerator":2,"s":-1,"branch":1}"#
        )
        .is_err());
        assert!(serde_json::from_str::<QuantumState>(
            r#"{"n":1,"mj_numerator":1,"s":0,"branch":1}"#
        )
        .is_err());
        let back = serde_json::to_string(&q).unwrap();
        assert_eq!(back, r#"{"n":1,"mj_numerator":-3,"s":-1,"branch":1}"#);
    }
}
