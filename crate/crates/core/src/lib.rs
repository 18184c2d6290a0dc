//! Persistent rotation of a ring crystal of trapped ions in a magnetic field.
//!
//! The library covers the closed-form scales of a flux-threaded ring
//! ([`model`]), the normal modes of the ring Coulomb crystal ([`modes`]), the
//! flux-quantized collective-rotation levels ([`spectrum`]), their thermal
//! averages ([`thermal`]) and experiment-planning checks ([`planner`]).
//!
//! Numerical code is generic over the [`Real`] scalar; the aliases below fix
//! it to `f64` (or `f32` with the `32` suffix).

pub mod constants;
pub mod error;
pub mod model;
pub mod modes;
pub mod planner;
pub mod quantum;
pub mod scalar;
pub mod spectrum;
pub mod summation;
pub mod thermal;

pub use constants::{ConstantSet, CODATA_2014, CODATA_2018};
pub use error::{Error, Result};
pub use model::{characterize_ring, normalized_flux, species_lookup, SpeciesRegistry, Statistics};
pub use quantum::HalfInt;
pub use scalar::Real;
pub use spectrum::Ladder;

pub type Species64 = model::Species<f64>;
pub type Species32 = model::Species<f32>;
pub type RingConfig64 = model::RingConfig<f64>;
pub type RingConfig32 = model::RingConfig<f32>;
pub type RingCharacterization64 = model::RingCharacterization<f64>;
pub type RingCharacterization32 = model::RingCharacterization<f32>;
pub type ModeSpectrum64 = modes::ModeSpectrum<f64>;
pub type ModeSpectrum32 = modes::ModeSpectrum<f32>;
pub type RotationalLevel64 = spectrum::RotationalLevel<f64>;
pub type GroundState64 = spectrum::GroundState<f64>;
pub type ThermalPoint64 = thermal::ThermalPoint<f64>;
pub type ThermalPoint32 = thermal::ThermalPoint<f32>;

/// Crate version, recorded in generated datasets.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
