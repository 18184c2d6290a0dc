//! Fundamental constants in SI units.

/// A named, self-consistent set of fundamental constants (SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantSet {
    pub name: &'static str,
    /// Elementary charge, C.
    pub elementary_charge: f64,
    /// Planck constant, J s.
    pub planck: f64,
    /// Vacuum permittivity, F/m.
    pub vacuum_permittivity: f64,
    /// Boltzmann constant, J/K.
    pub boltzmann: f64,
    /// Electron mass, kg.
    pub electron_mass: f64,
    /// Atomic mass constant, kg.
    pub atomic_mass_unit: f64,
}

/// CODATA 2018 recommended values. The default everywhere.
pub const CODATA_2018: ConstantSet = ConstantSet {
    name: "CODATA2018",
    elementary_charge: 1.602_176_634e-19,
    planck: 6.626_070_15e-34,
    vacuum_permittivity: 8.854_187_812_8e-12,
    boltzmann: 1.380_649e-23,
    electron_mass: 9.109_383_701_5e-31,
    atomic_mass_unit: 1.660_539_066_60e-27,
};

/// CODATA 2014 values, kept for regression comparisons.
pub const CODATA_2014: ConstantSet = ConstantSet {
    name: "CODATA2014",
    elementary_charge: 1.602_176_620_8e-19,
    planck: 6.626_070_040e-34,
    vacuum_permittivity: 8.854_187_817e-12,
    boltzmann: 1.380_648_52e-23,
    electron_mass: 9.109_383_56e-31,
    atomic_mass_unit: 1.660_539_040e-27,
};

impl ConstantSet {
    /// Reduced Planck constant h / 2π, J s.
    pub fn hbar(&self) -> f64 {
        self.planck / (2.0 * std::f64::consts::PI)
    }

    pub fn by_name(name: &str) -> Option<ConstantSet> {
        match name.to_ascii_uppercase().replace(['-', '_', ' '], "").as_str() {
            "CODATA2018" => Some(CODATA_2018),
            "CODATA2014" => Some(CODATA_2014),
            _ => None,
        }
    }
}

impl Default for ConstantSet {
    fn default() -> Self {
        CODATA_2018
    }
}
