//! Closed-form spectra and eigenfunctions.

pub mod nonrel;
pub mod radial;
pub mod spectrum;

pub use nonrel::{
    nonrel_energy, nonrel_energy_variant, nonrel_limit_check, nonrel_wavefunction, NonRelLimit,
    NonRelResult, NonRelVariant, NonRelWaveFunction,
};
pub use radial::{radial_component, spinor_eval, RadialFunction, SpinorField, SpinorValue};
pub use spectrum::{
    hmw_phase, relativistic_energy, relativistic_energy_from_phase, settings_table, SettingRow,
    SpectrumResult, SETTINGS,
};
