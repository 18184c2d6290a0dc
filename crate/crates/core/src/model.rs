//! Species, ring configurations and the closed-form characteristic scales of
//! a flux-threaded ion ring.
//!
//! All quantities are SI. The magnetic field is signed along the ring axis and
//! positive angular frequency means counterclockwise rotation seen from +B, so
//! the normalized flux carries the sign of `q * B`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{ConstantSet, CODATA_2018};
use crate::error::{Error, Result};
use crate::scalar::{count, lit, Real};

/// Exchange statistics of the particles forming the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
    Distinguishable,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
            Statistics::Distinguishable => "distinguishable",
        })
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boson" | "bosonic" | "b" => Ok(Statistics::Boson),
            "fermion" | "fermionic" | "f" => Ok(Statistics::Fermion),
            "distinguishable" | "d" | "rigid" => Ok(Statistics::Distinguishable),
            other => Err(Error::InvalidSpecies(format!("unknown statistics '{other}'"))),
        }
    }
}

/// Particle identity: mass (kg), signed charge (C) and exchange statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Species<T = f64> {
    pub name: String,
    pub mass: T,
    pub charge: T,
    pub statistics: Statistics,
}

impl<T: Real> Species<T> {
    pub fn new(name: impl Into<String>, mass: T, charge: T, statistics: Statistics) -> Result<Self> {
        let name = name.into();
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::InvalidSpecies(format!("{name}: mass must be positive and finite")));
        }
        if charge == T::zero() || !charge.is_finite() {
            return Err(Error::InvalidSpecies(format!("{name}: charge must be nonzero and finite")));
        }
        Ok(Species { name, mass, charge, statistics })
    }

    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.statistics = statistics;
        self
    }

    pub fn cast<U: Real>(&self) -> Species<U> {
        Species {
            name: self.name.clone(),
            mass: lit(crate::scalar::to_f64(self.mass)),
            charge: lit(crate::scalar::to_f64(self.charge)),
            statistics: self.statistics,
        }
    }
}

/// Atomic mass of ⁹Be in u.
pub const BE9_ATOMIC_MASS_U: f64 = 9.012_183_1;
/// Atomic mass of ²⁴Mg in u.
pub const MG24_ATOMIC_MASS_U: f64 = 23.985_042;

/// Immutable lookup table of named species.
#[derive(Debug, Clone)]
pub struct SpeciesRegistry {
    entries: BTreeMap<String, Species<f64>>,
    constants: ConstantSet,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpeciesFile {
    #[serde(default)]
    species: Vec<SpeciesEntry>,
}

/// One `[[species]]` table of a species config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesEntry {
    pub name: String,
    /// Particle mass in atomic mass units (taken as given, no electron correction).
    pub mass_u: Option<f64>,
    pub mass_kg: Option<f64>,
    /// Charge in units of the elementary charge.
    pub charge_e: f64,
    pub statistics: Statistics,
}

impl SpeciesEntry {
    pub fn resolve(&self, constants: &ConstantSet) -> Result<Species<f64>> {
        let mass = match (self.mass_u, self.mass_kg) {
            (Some(u), None) => u * constants.atomic_mass_unit,
            (None, Some(kg)) => kg,
            _ => {
                return Err(Error::InvalidSpecies(format!(
                    "{}: exactly one of mass_u or mass_kg is required",
                    self.name
                )))
            }
        };
        Species::new(
            self.name.clone(),
            mass,
            self.charge_e * constants.elementary_charge,
            self.statistics,
        )
    }
}

impl SpeciesRegistry {
    /// ⁹Be⁺ (boson), ²⁴Mg⁺ (fermion) and the electron (fermion).
    pub fn builtin(constants: &ConstantSet) -> Self {
        let e = constants.elementary_charge;
        let me = constants.electron_mass;
        let u = constants.atomic_mass_unit;
        let mut entries = BTreeMap::new();
        for s in [
            Species::new("Be9+", BE9_ATOMIC_MASS_U * u - me, e, Statistics::Boson),
            Species::new("Mg24+", MG24_ATOMIC_MASS_U * u - me, e, Statistics::Fermion),
            Species::new("electron", me, -e, Statistics::Fermion),
        ] {
            let s = s.expect("built-in species are valid");
            entries.insert(s.name.to_ascii_lowercase(), s);
        }
        SpeciesRegistry { entries, constants: *constants }
    }

    /// Adds the entries of a TOML species file on top of the current table.
    ///
    /// ```toml
    /// [[species]]
    /// name = "Ca40+"
    /// mass_u = 39.96199
    /// charge_e = 1
    /// statistics = "boson"
    /// ```
    pub fn extend_from_toml(mut self, text: &str) -> Result<Self> {
        let file: SpeciesFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for entry in file.species {
            let s = entry.resolve(&self.constants)?;
            self.entries.insert(s.name.to_ascii_lowercase(), s);
        }
        Ok(self)
    }

    /// Case-insensitive lookup.
    pub fn lookup(&self, name: &str) -> Result<Species<f64>> {
        self.entries
            .get(&name.trim().to_ascii_lowercase())
            .cloned()
            .ok_or_else(|| Error::UnknownSpecies(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.values().map(|s| s.name.as_str())
    }

    pub fn constants(&self) -> &ConstantSet {
        &self.constants
    }
}

impl Default for SpeciesRegistry {
    fn default() -> Self {
        SpeciesRegistry::builtin(&CODATA_2018)
    }
}

/// Looks a species up in the CODATA 2018 built-in table.
pub fn species_lookup(name: &str) -> Result<Species<f64>> {
    SpeciesRegistry::default().lookup(name)
}

/// N identical particles on a ring of diameter `diameter` (m) threaded by an
/// axial field `b_field` (T).
#[derive(Debug, Clone, PartialEq)]
pub struct RingConfig<T = f64> {
    pub species: Species<T>,
    pub n_ions: usize,
    pub diameter: T,
    pub b_field: T,
    pub constants: ConstantSet,
}

impl<T: Real> RingConfig<T> {
    pub fn new(species: Species<T>, n_ions: usize, diameter: T, b_field: T) -> Result<Self> {
        if n_ions == 0 {
            return Err(Error::Domain("ring needs at least one particle".into()));
        }
        if !(diameter > T::zero()) || !diameter.is_finite() {
            return Err(Error::Domain("ring diameter must be positive and finite".into()));
        }
        if !b_field.is_finite() {
            return Err(Error::Domain("magnetic field must be finite".into()));
        }
        Ok(RingConfig { species, n_ions, diameter, b_field, constants: CODATA_2018 })
    }

    /// Builds a ring whose field is chosen to produce the normalized flux `alpha`.
    pub fn with_alpha(species: Species<T>, n_ions: usize, diameter: T, alpha: T) -> Result<Self> {
        let mut ring = Self::new(species, n_ions, diameter, T::zero())?;
        ring.b_field = ring.field_for_alpha(alpha);
        Ok(ring)
    }

    pub fn with_constants(mut self, constants: ConstantSet) -> Self {
        self.constants = constants;
        self
    }

    /// Resets the field so the ring carries normalized flux `alpha` under its current constants.
    pub fn with_flux(mut self, alpha: T) -> Self {
        self.b_field = self.field_for_alpha(alpha);
        self
    }

    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.species.statistics = statistics;
        self
    }

    pub fn with_diameter(&self, diameter: T) -> Self {
        RingConfig { diameter, ..self.clone() }
    }

    pub fn with_n_ions(&self, n_ions: usize) -> Self {
        RingConfig { n_ions, ..self.clone() }
    }

    pub fn statistics(&self) -> Statistics {
        self.species.statistics
    }

    pub(crate) fn hbar(&self) -> T {
        lit(self.constants.hbar())
    }

    /// B such that `normalized_flux` returns `alpha` at this diameter.
    pub fn field_for_alpha(&self, alpha: T) -> T {
        let h_over_q = lit::<T>(self.constants.planck) / self.species.charge;
        alpha * lit::<T>(4.0) * h_over_q / (T::pi() * self.diameter * self.diameter)
    }
}

/// Closed-form characteristic scales of one ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingCharacterization<T = f64> {
    /// Normalized flux α = qπd²B/(4h), signed.
    pub alpha: T,
    /// E* = 2Nℏ²/(Md²), J.
    pub e_star: T,
    /// ω* = 4ℏ/(Md²), rad/s.
    pub omega_star: T,
    /// T* = E*/k_B, K.
    pub t_star: T,
    /// η = sqrt(q²Md/(8πℏ²ε₀)).
    pub eta: T,
    /// d₀ = sqrt(4h/(π|q|B₀)) with B₀ = |B|, m. `None` at zero field.
    pub d0: Option<T>,
    /// ω*₀ = |q|B₀/(2M), rad/s. `None` at zero field.
    pub omega_star0: Option<T>,
}

/// α = qπd²B/(4h).
pub fn normalized_flux<T: Real>(ring: &RingConfig<T>) -> T {
    let q_over_h = ring.species.charge / lit::<T>(ring.constants.planck);
    q_over_h * T::pi() * ring.diameter * ring.diameter * ring.b_field / lit(4.0)
}

/// ω* = 4ℏ/(Md²).
pub fn characteristic_frequency<T: Real>(ring: &RingConfig<T>) -> T {
    let hbar_over_m = ring.hbar() / ring.species.mass;
    lit::<T>(4.0) * hbar_over_m / (ring.diameter * ring.diameter)
}

/// E* = 2Nℏ²/(Md²), evaluated as Nℏω*/2.
pub fn characteristic_energy<T: Real>(ring: &RingConfig<T>) -> T {
    count::<T>(ring.n_ions) * ring.hbar() * characteristic_frequency(ring) / lit(2.0)
}

/// η, the ratio setting the cost of exciting relative vibrations.
pub fn eta<T: Real>(ring: &RingConfig<T>) -> T {
    let q_over_hbar = ring.species.charge.abs() / ring.hbar();
    let eps0 = lit::<T>(ring.constants.vacuum_permittivity);
    q_over_hbar * (ring.species.mass * ring.diameter / (lit::<T>(8.0) * T::pi() * eps0)).sqrt()
}

/// d₀ = sqrt(4h/(π|q|B₀)).
pub fn unit_flux_diameter<T: Real>(species: &Species<T>, b0: T, constants: &ConstantSet) -> T {
    let h_over_q = lit::<T>(constants.planck) / species.charge.abs();
    (lit::<T>(4.0) * h_over_q / (T::pi() * b0)).sqrt()
}

/// ω*₀ = |q|B₀/(2M).
pub fn unit_flux_frequency<T: Real>(species: &Species<T>, b0: T) -> T {
    species.charge.abs() / species.mass * b0 / lit(2.0)
}

pub fn characterize_ring<T: Real>(ring: &RingConfig<T>) -> RingCharacterization<T> {
    let omega_star = characteristic_frequency(ring);
    let e_star = characteristic_energy(ring);
    let t_star = e_star / lit::<T>(ring.constants.boltzmann);
    let b0 = ring.b_field.abs();
    let (d0, omega_star0) = if b0 > T::zero() {
        (
            Some(unit_flux_diameter(&ring.species, b0, &ring.constants)),
            Some(unit_flux_frequency(&ring.species, b0)),
        )
    } else {
        (None, None)
    };
    RingCharacterization {
        alpha: normalized_flux(ring),
        e_star,
        omega_star,
        t_star,
        eta: eta(ring),
        d0,
        omega_star0,
    }
}

impl<T: Real> RingConfig<T> {
    pub fn characterize(&self) -> RingCharacterization<T> {
        characterize_ring(self)
    }

    pub fn alpha(&self) -> T {
        normalized_flux(self)
    }
}
