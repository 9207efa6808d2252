//! Finite-difference eigensolver for the radial equations.
//!
//! With u(ρ) = √ρ R(ρ) both radial problems take the form
//!
//! ```text
//! −u'' + [(μ² − 1/4)/ρ² − ρ₀/ρ] u = Λ u,   u(ρ_min) = u(ρ_max) = 0
//! ```
//!
//! where μ is the channel exponent (m_s, or |l| for the Schrödinger
//! problem) and Λ = −η² (relativistic) or 2m₀ε/ħ² (nonrelativistic). The
//! operator is discretized with second-order central differences on a
//! uniform mesh, giving a symmetric tridiagonal matrix whose lowest
//! eigenvalues are bisected on the Sturm sequence. Nothing here uses the
//! closed-form spectra; the domain is sized from the numerical eigenvalues
//! themselves.

use serde::Serialize;

use crate::analytic::{NonRelVariant, RadialFunction, SpectrumResult};
use crate::analytic::nonrel::nonrel_energy_variant;
use crate::error::{Error, Result};
use crate::model::{derive_quantities, PhysicalParameters, QuantumState, Sign};
use crate::tridiag::{sign_changes, SymTridiagonal};

pub const DEFAULT_MESH: usize = 8000;
pub const MIN_MESH: usize = 200;
/// Decay lengths 1/η kept beyond the outer turning point.
const DECAY_LENGTHS: f64 = 20.0;
const PREPASS_MESH: usize = 2000;
/// Eigenvector mass allowed in the last 10% of the domain.
const TAIL_MASS_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Relativistic,
    NonRelativistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SturmLiouvilleProblem {
    pub kind: ChannelKind,
    /// μ = m_s or |l|.
    pub exponent: f64,
    /// ρ₀ in the −ρ₀/ρ term.
    pub rho0: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    /// Interior mesh points.
    pub mesh_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleEigenvalue {
    pub level_index: usize,
    /// Eigenvalue on the requested mesh.
    pub lambda: f64,
    /// Richardson extrapolation from the half-resolution mesh.
    pub extrapolated: f64,
    /// Estimated |error| of `lambda`: Richardson term plus the shift from
    /// halving ρ_min.
    pub mesh_estimate_error: f64,
    /// Sign changes of the discrete eigenvector.
    pub sign_changes: usize,
    /// Fraction of the eigenvector norm in the last 10% of the domain.
    pub tail_mass: f64,
}

impl OracleEigenvalue {
    pub fn relative_error_estimate(&self) -> f64 {
        self.mesh_estimate_error / self.lambda.abs()
    }
}

impl SturmLiouvilleProblem {
    /// A problem on an explicit domain.
    pub fn new(
        kind: ChannelKind,
        exponent: f64,
        rho0: f64,
        rho_min: f64,
        rho_max: f64,
        mesh_points: usize,
    ) -> Result<Self> {
        if !(exponent > 0.0) {
            return Err(Error::DegenerateChannel {
                xi: f64::NAN,
                m_s: exponent,
            });
        }
        if !(rho0 >= 0.0) || !rho0.is_finite() {
            return Err(Error::invalid(format!("rho0 must be >= 0, got {rho0}")));
        }
        if !(rho_min > 0.0 && rho_max > rho_min && rho_max.is_finite()) {
            return Err(Error::invalid(format!(
                "need 0 < rho_min < rho_max, got ({rho_min}, {rho_max})"
            )));
        }
        if mesh_points < MIN_MESH {
            return Err(Error::invalid(format!(
                "mesh_points must be >= {MIN_MESH}, got {mesh_points}"
            )));
        }
        Ok(SturmLiouvilleProblem {
            kind,
            exponent,
            rho0,
            rho_min,
            rho_max,
            mesh_points,
        })
    }

    /// A problem whose domain is fitted to the lowest `levels` states.
    pub fn fitted(
        kind: ChannelKind,
        exponent: f64,
        rho0: f64,
        levels: usize,
        mesh_points: usize,
    ) -> Result<Self> {
        let levels = levels.max(1);
        let seed = Self::new(kind, exponent, rho0, 1e-6, 1.0, mesh_points)?;
        let (rho_min, rho_max) = seed.fit_domain(levels);
        Self::new(kind, exponent, rho0, rho_min, rho_max, mesh_points)
    }

    /// (μ² − 1/4), the coefficient of 1/ρ².
    pub fn centrifugal_coeff(&self) -> f64 {
        self.exponent * self.exponent - 0.25
    }

    /// −ρ₀, the coefficient of 1/ρ.
    pub fn coulomb_coeff(&self) -> f64 {
        -self.rho0
    }

    pub fn potential(&self, rho: f64) -> f64 {
        self.centrifugal_coeff() / (rho * rho) + self.coulomb_coeff() / rho
    }

    /// Outer classical turning point for eigenvalue Λ < 0.
    pub fn outer_turning_point(&self, lambda: f64) -> f64 {
        let e2 = -lambda;
        let disc = self.rho0 * self.rho0 - 4.0 * e2 * self.centrifugal_coeff();
        (self.rho0 + disc.max(0.0).sqrt()) / (2.0 * e2)
    }

    fn spacing(&self, points: usize) -> f64 {
        (self.rho_max - self.rho_min) / (points as f64 + 1.0)
    }

    pub fn grid(&self, points: usize) -> Vec<f64> {
        let h = self.spacing(points);
        (1..=points).map(|i| self.rho_min + i as f64 * h).collect()
    }

    pub fn matrix(&self, points: usize) -> SymTridiagonal {
        let h = self.spacing(points);
        let inv_h2 = 1.0 / (h * h);
        let diag = self
            .grid(points)
            .into_iter()
            .map(|rho| 2.0 * inv_h2 + self.potential(rho))
            .collect();
        SymTridiagonal::new(diag, vec![-inv_h2; points - 1])
    }

    fn with_rho_min(&self, rho_min: f64) -> Self {
        SturmLiouvilleProblem { rho_min, ..*self }
    }

    // Iterates ρ_max = turning point + DECAY_LENGTHS/η on a coarse mesh until
    // it settles. Without a bound level the initial guess is kept.
    fn fit_domain(&self, levels: usize) -> (f64, f64) {
        let scale = if self.rho0 > 0.0 {
            self.centrifugal_coeff().abs().max(1.0) / self.rho0
        } else {
            1.0
        };
        let mut rho_max = 50.0 * scale * levels as f64;
        let mut eta_ground = None;
        for _ in 0..40 {
            let trial = SturmLiouvilleProblem {
                rho_min: rho_max * 1e-7,
                rho_max,
                ..*self
            };
            let t = trial.matrix(PREPASS_MESH);
            let top = t.eigenvalue(levels - 1);
            if top >= 0.0 {
                if self.rho0 == 0.0 {
                    break;
                }
                rho_max *= 4.0;
                continue;
            }
            let eta = (-top).sqrt();
            eta_ground = Some((-t.eigenvalue(0)).sqrt());
            let next = trial.outer_turning_point(top) + DECAY_LENGTHS / eta;
            let settled = ((next - rho_max) / rho_max).abs() < 0.02;
            rho_max = next;
            if settled {
                break;
            }
        }
        let rho_min = match eta_ground {
            Some(eta) => 1e-4 / eta,
            None => rho_max * 1e-6,
        };
        (rho_min, rho_max)
    }
}

/// The relativistic channel of state `q`.
pub fn build_problem(
    p: &PhysicalParameters,
    q: &QuantumState,
    levels: usize,
    mesh_points: usize,
) -> Result<SturmLiouvilleProblem> {
    let dq = derive_quantities(p, q)?;
    SturmLiouvilleProblem::fitted(ChannelKind::Relativistic, dq.m_s, dq.rho0, levels, mesh_points)
}

/// The Schrödinger channel with orbital number `m`; exponent |l|, |l| = |m − dλ_m/ħ|.
pub fn build_nonrel_problem(
    p: &PhysicalParameters,
    m: i64,
    levels: usize,
    mesh_points: usize,
) -> Result<SturmLiouvilleProblem> {
    p.validate()?;
    let l = (m as f64 - p.dipole_coupling()).abs();
    SturmLiouvilleProblem::fitted(ChannelKind::NonRelativistic, l, p.rho0(), levels, mesh_points)
}

/// The `k` lowest eigenvalues with two-mesh error estimates. With a
/// `tolerance`, a relative error estimate above it is `MeshTooCoarse`.
pub fn solve_lowest(
    problem: &SturmLiouvilleProblem,
    k: usize,
    tolerance: Option<f64>,
) -> Result<Vec<OracleEigenvalue>> {
    if k == 0 {
        return Err(Error::invalid("need at least one eigenvalue"));
    }
    let n_fine = problem.mesh_points;
    if k > n_fine {
        return Err(Error::invalid("more eigenvalues requested than mesh points"));
    }
    let n_coarse = n_fine / 2;
    let fine = problem.matrix(n_fine);
    let coarse = problem.matrix(n_coarse);
    let shifted = problem.with_rho_min(problem.rho_min / 2.0).matrix(n_fine);
    let ratio = problem.spacing(n_coarse) / problem.spacing(n_fine);
    let denom = ratio * ratio - 1.0;
    let grid = problem.grid(n_fine);
    let tail_start = problem.rho_max - 0.1 * (problem.rho_max - problem.rho_min);

    let mut out = Vec::with_capacity(k);
    for level in 0..k {
        let lambda = fine.eigenvalue(level);
        let lambda_coarse = coarse.eigenvalue(level);
        let richardson = (lambda_coarse - lambda) / denom;
        let boundary = (shifted.eigenvalue(level) - lambda).abs();
        let vector = fine.eigenvector(lambda);
        let total: f64 = vector.iter().map(|v| v * v).sum();
        let tail: f64 = grid
            .iter()
            .zip(&vector)
            .filter(|(rho, _)| **rho >= tail_start)
            .map(|(_, v)| v * v)
            .sum();
        let tail_mass = tail / total;
        if lambda < 0.0 && tail_mass > TAIL_MASS_LIMIT {
            return Err(Error::DomainTooSmall { level, tail_mass });
        }
        let ev = OracleEigenvalue {
            level_index: level,
            lambda,
            extrapolated: lambda - richardson,
            mesh_estimate_error: richardson.abs() + boundary,
            sign_changes: sign_changes(&vector, 1e-10),
            tail_mass,
        };
        if let Some(tol) = tolerance {
            let est = ev.relative_error_estimate();
            if !(est <= tol) {
                return Err(Error::MeshTooCoarse {
                    level,
                    estimate: est,
                    tolerance: tol,
                });
            }
        }
        out.push(ev);
    }
    Ok(out)
}

fn chebyshev_points(a: f64, b: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| {
            let t = (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * count) as f64).cos();
            0.5 * (a + b) + 0.5 * (b - a) * t
        })
        .collect()
}

/// Largest relative residual of R'' + R'/ρ − m_s²R/ρ² + ρ₀R/ρ − η²R over
/// Chebyshev points in [10⁻³/η, 40/η], for the analytic R_s of `q.s` at the
/// energy carried by `spectrum`.
pub fn residual_scan(
    p: &PhysicalParameters,
    q: &QuantumState,
    spectrum: &SpectrumResult,
    samples: usize,
) -> Result<f64> {
    let radial = RadialFunction::new(p, q, spectrum, q.s)?;
    let rho0 = p.rho0();
    let (m, eta) = (radial.m_s, radial.eta);
    let mut worst = 0.0f64;
    for rho in chebyshev_points(1e-3 / eta, 40.0 / eta, samples.max(1)) {
        let [r, r1, r2] = radial.reduced_derivatives(rho);
        let terms = [
            r2,
            r1 / rho,
            -m * m * r / (rho * rho),
            rho0 * r / rho,
            -eta * eta * r,
        ];
        let scale = terms.iter().fold(0.0f64, |acc, t| acc.max(t.abs()));
        if scale == 0.0 {
            continue;
        }
        worst = worst.max(terms.iter().sum::<f64>().abs() / scale);
    }
    Ok(worst)
}

/// Oracle vs closed form for one (κ, s) channel, levels 0..levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AgreementRow {
    pub n: u32,
    pub s: Sign,
    pub kappa: f64,
    pub eta2_analytic: f64,
    pub oracle: OracleEigenvalue,
    /// |Λ + η²| / η².
    pub relative_error: f64,
}

pub fn channel_agreement(
    p: &PhysicalParameters,
    q: &QuantumState,
    levels: usize,
    mesh_points: usize,
    tolerance: Option<f64>,
) -> Result<Vec<AgreementRow>> {
    let problem = build_problem(p, q, levels, mesh_points)?;
    let eigen = solve_lowest(&problem, levels, tolerance)?;
    eigen
        .into_iter()
        .map(|ev| {
            let state = q.with_n(ev.level_index as u32);
            let spec = crate::analytic::relativistic_energy(p, &state)?;
            let eta2 = spec.eta * spec.eta;
            Ok(AgreementRow {
                n: state.n,
                s: q.s,
                kappa: p.kappa,
                eta2_analytic: eta2,
                oracle: ev,
                relative_error: (ev.lambda + eta2).abs() / eta2,
            })
        })
        .collect()
}

/// Oracle verdict on the nonrelativistic level formulas for one (n, m).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonRelAdjudication {
    pub n: u32,
    pub m: i64,
    pub l: f64,
    pub epsilon_oracle: f64,
    pub estimate: f64,
    /// (variant, ε, relative deviation from the oracle).
    pub candidates: Vec<(NonRelVariant, f64, f64)>,
}

impl NonRelAdjudication {
    /// Variants within `tol` relative of the oracle.
    pub fn accepted(&self, tol: f64) -> Vec<NonRelVariant> {
        self.candidates
            .iter()
            .filter(|(_, _, dev)| *dev <= tol)
            .map(|(v, _, _)| *v)
            .collect()
    }
}

pub fn adjudicate_nonrel(
    p: &PhysicalParameters,
    n: u32,
    m: i64,
    mesh_points: usize,
) -> Result<NonRelAdjudication> {
    let levels = n as usize + 1;
    let problem = build_nonrel_problem(p, m, levels, mesh_points)?;
    let ev = solve_lowest(&problem, levels, None)?[n as usize];
    let to_energy = p.hbar * p.hbar / (2.0 * p.m0);
    let epsilon_oracle = ev.lambda * to_energy;
    let mut candidates = Vec::new();
    for variant in [NonRelVariant::Printed, NonRelVariant::Absolute, NonRelVariant::Exact] {
        match nonrel_energy_variant(p, n, m, variant) {
            Ok(r) => {
                let dev = ((r.epsilon - epsilon_oracle) / epsilon_oracle).abs();
                candidates.push((variant, r.epsilon, dev));
            }
            Err(Error::SpectrumDivergence) => {
                candidates.push((variant, f64::NEG_INFINITY, f64::INFINITY))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(NonRelAdjudication {
        n,
        m,
        l: m as f64 - p.dipole_coupling(),
        epsilon_oracle,
        estimate: ev.mesh_estimate_error * to_energy,
        candidates,
    })
}
