//! Feasibility checks for preparing and observing a persistently rotating ring.

mod quasicrystal;

pub use quasicrystal::{
    classify_ratio, continued_fraction_convergents, quasicrystal_analysis, Commensurability, QuasicrystalAnalysis,
    DEFAULT_Q_MAX, DEFAULT_TOLERANCE,
};

use serde::Serialize;

use crate::constants::ConstantSet;
use crate::error::{Error, Result};
use crate::model::{unit_flux_diameter, RingConfig, Species};
use crate::modes::crystallization_temperature;
use crate::scalar::{count, lit, to_f64, Real};
use crate::spectrum::{ground_state, GroundState};

/// Allowed marker-beam waists, m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaistWindow<T = f64> {
    pub w_min: T,
    pub w_max: T,
    pub feasible: bool,
}

/// 2√2·d/N < w₀ < √2·d.
pub fn marker_waist_window<T: Real>(n_ions: usize, diameter: T) -> Result<WaistWindow<T>> {
    if n_ions == 0 || !(diameter > T::zero()) {
        return Err(Error::Domain("waist window needs N ≥ 1 and d > 0".into()));
    }
    let sqrt2 = lit::<T>(2.0).sqrt();
    let w_max = sqrt2 * diameter;
    let w_min = lit::<T>(2.0) * sqrt2 * diameter / count::<T>(n_ions);
    Ok(WaistWindow { w_min, w_max, feasible: w_min < w_max })
}

fn unique_ground<T: Real>(ring: &RingConfig<T>) -> Result<GroundState<T>> {
    let g = ground_state(ring);
    match g.partner {
        Some(p) if g.degenerate => Err(Error::DegenerateGroundState {
            alpha: to_f64(ring.alpha()),
            lower: g.level.n1.to_string(),
            upper: p.n1.to_string(),
        }),
        _ => Ok(g),
    }
}

/// Marker momentum kick √2ℏ/w₀ over the ring momentum 2Nℏ|n₁* − α|/d.
///
/// Infinite when the ring is at rest (integer flux on the bosonic ladder).
pub fn momentum_kick_ratio<T: Real>(waist: T, ring: &RingConfig<T>) -> Result<T> {
    if !(waist > T::zero()) {
        return Err(Error::Domain("waist must be positive".into()));
    }
    let g = unique_ground(ring)?;
    let offset = g.level.omega_reduced.abs();
    let two = lit::<T>(2.0);
    Ok(two.sqrt() * ring.diameter / (two * count::<T>(ring.n_ions) * waist * offset))
}

/// Angular displacement of the marked ion after `delta_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarkDisplacement<T = f64> {
    /// ω*(n₁* − α)Δt, rad.
    pub unwrapped: T,
    /// Same, wrapped into (−π, π].
    pub wrapped: T,
}

pub fn mark_displacement<T: Real>(ring: &RingConfig<T>, delta_t: T) -> Result<MarkDisplacement<T>> {
    let g = unique_ground(ring)?;
    let unwrapped = g.level.omega * delta_t;
    let two_pi = T::two_pi();
    let mut wrapped = unwrapped % two_pi;
    if wrapped > T::pi() {
        wrapped -= two_pi;
    } else if wrapped <= -T::pi() {
        wrapped += two_pi;
    }
    Ok(MarkDisplacement { unwrapped, wrapped })
}

/// Δt = 2πl/(ω*|n₁* − α|), s.
pub fn revival_time<T: Real>(ring: &RingConfig<T>, l: u32) -> Result<T> {
    if l == 0 {
        return Err(Error::Domain("revival index l must be at least 1".into()));
    }
    let g = unique_ground(ring)?;
    let omega = g.level.omega.abs();
    if omega == T::zero() {
        return Err(Error::Domain("ground state does not rotate; no revival time".into()));
    }
    Ok(T::two_pi() * lit::<T>(l as f64) / omega)
}

/// ℏ/(k_B T*), s. Order-of-magnitude lower bound on the pinning ramp-down time.
pub fn ramp_time_for_temperature<T: Real>(t_star: T, constants: &ConstantSet) -> T {
    lit::<T>(constants.hbar()) / lit::<T>(constants.boltzmann) / t_star
}

/// ℏ/E* for the ring, s.
pub fn adiabatic_ramp_time<T: Real>(ring: &RingConfig<T>) -> T {
    ring.hbar() / ring.characterize().e_star
}

/// d₀/√2: largest crystal diameter that co-rotates at ω*₀, m.
pub fn rigid_corotation_max_diameter<T: Real>(species: &Species<T>, b0: T, constants: &ConstantSet) -> Result<T> {
    if !(b0 > T::zero()) {
        return Err(Error::Domain("co-rotation bound needs B0 > 0".into()));
    }
    Ok(unit_flux_diameter(species, b0, constants) / lit::<T>(2.0).sqrt())
}

/// Pass thresholds for the "much smaller than" conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    /// T*/T_c must stay below this.
    pub crystal_ratio: f64,
    /// Marker kick over ring momentum must stay below this.
    pub kick_ratio: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { crystal_ratio: 0.1, kick_ratio: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    pub name: &'static str,
    pub passed: bool,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingSummary {
    pub species: String,
    pub mass_kg: f64,
    pub charge_c: f64,
    pub statistics: String,
    pub n_ions: usize,
    pub diameter_m: f64,
    pub b_field_t: f64,
    pub constants: &'static str,
}

/// Every planner quantity for one configuration, SI units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub ring: RingSummary,
    pub alpha: f64,
    pub omega_star: f64,
    pub e_star: f64,
    pub eta: f64,
    pub ground_n1: String,
    pub ground_omega: f64,
    pub t_crystal: f64,
    pub t_star: f64,
    pub waist: f64,
    pub waist_min: f64,
    pub waist_max: f64,
    pub waist_feasible: bool,
    pub kick_ratio: Option<f64>,
    pub ramp_time_min: f64,
    pub ramp_time_note: &'static str,
    pub revival_l: u32,
    pub revival_time: Option<f64>,
    pub delta_t: f64,
    pub mark_displacement: Option<f64>,
    pub mark_displacement_wrapped: Option<f64>,
    pub rigid_corotation_max_d: Option<f64>,
    pub flags: Vec<Flag>,
}

impl FeasibilityReport {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().find(|f| f.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.flags.iter().all(|f| f.passed)
    }
}

fn flag(name: &'static str, passed: bool, value: Option<f64>, threshold: Option<f64>, note: Option<String>) -> Flag {
    Flag { name, passed, value, threshold, note }
}

/// Aggregates the planner checks. Component errors are recorded on the
/// affected fields and flags instead of aborting the report.
pub fn feasibility_report<T: Real>(
    ring: &RingConfig<T>,
    waist: T,
    l: u32,
    delta_t: T,
    thresholds: Thresholds,
) -> Result<FeasibilityReport> {
    let c = ring.characterize();
    let g = ground_state(ring);
    let window = marker_waist_window(ring.n_ions, ring.diameter)?;
    let tc = crystallization_temperature(ring);
    let kick = momentum_kick_ratio(waist, ring);
    let revival = revival_time(ring, l);
    let mark = mark_displacement(ring, delta_t);
    let corotation = rigid_corotation_max_diameter(&ring.species, ring.b_field.abs(), &ring.constants);

    let f = to_f64::<T>;
    let crystal_ratio = f(c.t_star) / f(tc.kelvin);
    let mut flags = vec![
        flag(
            "crystal_regime",
            tc.meaningful && crystal_ratio < thresholds.crystal_ratio,
            Some(crystal_ratio),
            Some(thresholds.crystal_ratio),
            (!tc.meaningful).then(|| "single particle: no crystal".to_string()),
        ),
        flag(
            "ground_state_unique",
            !g.degenerate,
            None,
            None,
            g.partner.map(|p| format!("tie between n1 = {} and n1 = {}", g.level.n1, p.n1)),
        ),
        flag(
            "waist_in_window",
            window.w_min < waist && waist < window.w_max,
            Some(f(waist)),
            None,
            Some(format!("window ({:e}, {:e}) m", f(window.w_min), f(window.w_max))),
        ),
    ];
    flags.push(match &kick {
        Ok(r) => flag(
            "kick_nondestructive",
            f(*r) < thresholds.kick_ratio,
            Some(f(*r)),
            Some(thresholds.kick_ratio),
            (!r.is_finite()).then(|| "ring is at rest: zero momentum".to_string()),
        ),
        Err(e) => flag("kick_nondestructive", false, None, Some(thresholds.kick_ratio), Some(e.to_string())),
    });
    flags.push(match &corotation {
        Ok(bound) => flag(
            "within_corotation_bound",
            ring.diameter < *bound,
            Some(f(ring.diameter / *bound)),
            Some(1.0),
            None,
        ),
        Err(_) => flag("within_corotation_bound", false, None, Some(1.0), Some("zero field".into())),
    });

    Ok(FeasibilityReport {
        ring: RingSummary {
            species: ring.species.name.clone(),
            mass_kg: f(ring.species.mass),
            charge_c: f(ring.species.charge),
            statistics: ring.species.statistics.to_string(),
            n_ions: ring.n_ions,
            diameter_m: f(ring.diameter),
            b_field_t: f(ring.b_field),
            constants: ring.constants.name,
        },
        alpha: f(c.alpha),
        omega_star: f(c.omega_star),
        e_star: f(c.e_star),
        eta: f(c.eta),
        ground_n1: g.level.n1.to_string(),
        ground_omega: f(g.level.omega),
        t_crystal: f(tc.kelvin),
        t_star: f(c.t_star),
        waist: f(waist),
        waist_min: f(window.w_min),
        waist_max: f(window.w_max),
        waist_feasible: window.feasible,
        kick_ratio: kick.ok().map(f),
        ramp_time_min: f(adiabatic_ramp_time(ring)),
        ramp_time_note: "order-of-magnitude bound hbar/(k_B T*)",
        revival_l: l,
        revival_time: revival.ok().map(f),
        delta_t: f(delta_t),
        mark_displacement: mark.as_ref().ok().map(|m| f(m.unwrapped)),
        mark_displacement_wrapped: mark.as_ref().ok().map(|m| f(m.wrapped)),
        rigid_corotation_max_d: corotation.ok().map(f),
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::CODATA_2018;
    use crate::model::species_lookup;

    fn flagship(alpha: f64) -> RingConfig {
        RingConfig::with_alpha(species_lookup("Be9+").unwrap(), 100, 100e-6, alpha).unwrap()
    }

    #[test]
    fn waist_windows() {
        let w = marker_waist_window(100, 100e-6_f64).unwrap();
        assert!((w.w_min - 2.828e-6).abs() < 1e-9);
        assert!((w.w_max - 141.4e-6).abs() < 1e-7);
        assert!(w.feasible);
        let two = marker_waist_window(2, 1.0).unwrap();
        assert_eq!(two.w_min, two.w_max);
        assert!(!two.feasible);
        let four = marker_waist_window(4, 1.0).unwrap();
        assert!((four.w_min - 2f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(four.w_max, 2f64.sqrt());
        assert!(marker_waist_window(0, 1.0).is_err());
    }

    #[test]
    fn kick_ratio_examples() {
        let ring = flagship(0.25);
        let r = momentum_kick_ratio(2.0 * 2f64.sqrt() * 100e-6 / 100.0, &ring).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let r = momentum_kick_ratio(2f64.sqrt() * 100e-6, &ring).unwrap();
        assert!((r - 0.02).abs() < 1e-12);
        assert!(momentum_kick_ratio(1e-5, &flagship(0.0)).unwrap().is_infinite());
        assert!(matches!(
            momentum_kick_ratio(1e-5, &flagship(0.5)),
            Err(Error::DegenerateGroundState { .. })
        ));
    }

    #[test]
    fn marker_motion() {
        let ring = flagship(0.25);
        let w = ring.characterize().omega_star;
        assert_eq!(mark_displacement(&ring, 0.0).unwrap().unwrapped, 0.0);
        let rev = mark_displacement(&ring, 2.0 * std::f64::consts::PI / (w * 0.25)).unwrap();
        assert!((rev.unwrapped.abs() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!(rev.wrapped.abs() < 1e-12);
        let one_second = mark_displacement(&ring, 1.0).unwrap().unwrapped.abs();
        assert!((one_second - 0.70).abs() < 0.01, "{one_second}");
    }

    #[test]
    fn revivals() {
        let ring = flagship(0.25);
        let t1 = revival_time(&ring, 1).unwrap();
        assert!((t1 - 9.0).abs() < 0.15, "{t1}");
        assert_eq!(revival_time(&ring, 2).unwrap(), 2.0 * t1);
        assert!(matches!(revival_time(&flagship(0.5), 1), Err(Error::DegenerateGroundState { .. })));
        assert!(revival_time(&flagship(0.0), 1).is_err());
        assert!(revival_time(&ring, 0).is_err());
    }

    #[test]
    fn ramp_times() {
        let t = ramp_time_for_temperature(1.1e-9_f64, &CODATA_2018);
        assert!((t - 6.9e-3).abs() < 0.05e-3, "{t}");
        assert_eq!(ramp_time_for_temperature(2.2e-9, &CODATA_2018), t / 2.0);
        let chained = adiabatic_ramp_time(&flagship(0.25));
        assert!((chained - 7e-3).abs() < 0.5e-3, "{chained}");
    }

    #[test]
    fn corotation_bound() {
        let be = species_lookup("Be9+").unwrap();
        let b = rigid_corotation_max_diameter(&be, 1e-4, &CODATA_2018).unwrap();
        // d₀ = sqrt(4h/(π e · 1e-4 T)) = 7.2565 μm
        assert!((b * 2f64.sqrt() / 7.2565e-6 - 1.0).abs() < 1e-4, "{b}");
        let quad = rigid_corotation_max_diameter(&be, 4e-4, &CODATA_2018).unwrap();
        assert!((quad * 2.0 / b - 1.0).abs() < 1e-15);
        assert!(rigid_corotation_max_diameter(&be, 0.0, &CODATA_2018).is_err());
        let ring = RingConfig::new(be, 10, b, 1e-4).unwrap();
        assert!((ring.alpha() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn flagship_report_passes() {
        let report = feasibility_report(&flagship(0.25), 10e-6, 1, 1.0, Thresholds::default()).unwrap();
        assert!(report.all_passed(), "{:#?}", report.flags);
        assert!(report.t_crystal > report.t_star);
    }

    #[test]
    fn report_failures_are_per_flag() {
        let two = feasibility_report(&flagship(0.25).with_n_ions(2), 10e-6, 1, 1.0, Thresholds::default()).unwrap();
        assert!(!two.flag("waist_in_window").unwrap().passed);
        let rest = feasibility_report(&flagship(0.0), 10e-6, 1, 1.0, Thresholds::default()).unwrap();
        assert!(rest.flag("ground_state_unique").unwrap().passed);
        assert!(!rest.flag("kick_nondestructive").unwrap().passed);
        assert!(rest.revival_time.is_none());
        let tie = feasibility_report(&flagship(0.5), 10e-6, 1, 1.0, Thresholds::default()).unwrap();
        assert!(!tie.flag("ground_state_unique").unwrap().passed);
        assert!(tie.kick_ratio.is_none());
    }
}
