//! Bound states of a planar Dirac fermion carrying an electric dipole moment
//! and a position-dependent mass m(ρ) = m₀ − κ/ρ, in the radial field
//! B = λ_m/ρ of a line of magnetic monopoles.
//!
//! The [`analytic`] module holds the closed-form spectra and eigenfunctions;
//! [`oracle`] is an independent finite-difference eigensolver used to check
//! them. [`sweep`] tabulates energies against κ or λ_m.
//!
//! ```
//! use monopole_dirac::{analytic, HalfInteger, PhysicalParameters, QuantumState, Sign};
//!
//! let p = PhysicalParameters::natural(-1.0, 1.0, 2.0).unwrap();
//! let q = QuantumState::new(0, HalfInteger::from_numerator(1).unwrap(), Sign::Minus, Sign::Plus);
//! let e = analytic::relativistic_energy(&p, &q).unwrap();
//! assert!(e.energy > 0.0 && e.energy < 1.0);
//! ```

// NaN must fail these range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod laguerre;
pub mod model;
pub mod oracle;
pub mod parallel;
pub mod quadrature;
pub mod sweep;
pub mod tridiag;

pub use error::{Error, Result};
pub use model::{
    derive_quantities, eta_from_energy, DerivedQuantities, HalfInteger, PhysicalParameters,
    QuantumState, Sign,
};
