mod common;

use ionring::model::{species_lookup, RingConfig};
use ionring::spectrum::{
    diameter_sweep, ground_state, reduced_energy_gap, reduced_ground_state, rotor_levels_reduced, rotor_oracle,
    Ladder, RotorOptions, RotorSector,
};
use ionring::{HalfInt, Statistics};
use proptest::prelude::*;

fn bosons() -> Ladder {
    Ladder::new(Statistics::Boson, 10)
}

fn even_fermions() -> Ladder {
    Ladder::new(Statistics::Fermion, 10)
}

/// Ground (n − α) values at a point as a sorted set, so ties compare symmetrically.
fn ground_set(alpha: f64, ladder: Ladder) -> Vec<f64> {
    let g = reduced_ground_state(alpha, ladder);
    let mut v = vec![g.omega];
    if let Some((_, w)) = g.partner {
        v.push(w);
    }
    v.sort_by(f64::total_cmp);
    v
}

proptest! {
    #[test]
    fn ground_matches_brute_force(alpha in -20.0f64..20.0, fermion in any::<bool>()) {
        let ladder = if fermion { even_fermions() } else { bosons() };
        let brute = common::brute_ground(alpha, fermion);
        let got = ground_set(alpha, ladder);
        prop_assert_eq!(got.len(), brute.len());
        for (a, b) in got.iter().zip(&brute) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn sawtooth_has_period_one(alpha in -5.0f64..5.0, fermion in any::<bool>()) {
        let ladder = if fermion { even_fermions() } else { bosons() };
        let a = ground_set(alpha, ladder);
        let b = ground_set(alpha + 1.0, ladder);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn dyadic_flux_period_is_exact(k in -640i64..640) {
        let alpha = k as f64 / 64.0;
        prop_assert_eq!(ground_set(alpha, bosons()), ground_set(alpha + 1.0, bosons()));
        prop_assert_eq!(ground_set(alpha, even_fermions()), ground_set(alpha + 1.0, even_fermions()));
    }

    #[test]
    fn sawtooth_is_odd_and_bounded(alpha in -5.0f64..5.0, fermion in any::<bool>()) {
        let ladder = if fermion { even_fermions() } else { bosons() };
        let plus = ground_set(alpha, ladder);
        let minus: Vec<f64> = ground_set(-alpha, ladder).into_iter().map(|w| -w).rev().collect();
        for (x, y) in plus.iter().zip(&minus) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        prop_assert!(plus.iter().all(|w| w.abs() <= 0.5));
    }

    #[test]
    fn zero_rotation_only_at_special_flux(alpha in -3.0f64..3.0) {
        let boson_rest = reduced_ground_state(alpha, bosons()).omega == 0.0;
        prop_assert_eq!(boson_rest, alpha.fract() == 0.0);
        let fermion_rest = reduced_ground_state(alpha, even_fermions()).omega == 0.0;
        prop_assert_eq!(fermion_rest, (alpha - 0.5).fract() == 0.0);
    }

    #[test]
    fn gap_is_nonnegative_and_bounded(alpha in -3.0f64..3.0) {
        let gap = reduced_energy_gap(alpha, bosons());
        prop_assert!((0.0..=1.0 + 1e-12).contains(&gap));
    }
}

#[test]
fn rest_points_are_exact() {
    for k in -4..=4 {
        assert_eq!(reduced_ground_state(k as f64, bosons()).omega, 0.0);
        assert_eq!(reduced_ground_state(k as f64 + 0.5, even_fermions()).omega, 0.0);
        assert!(reduced_ground_state(k as f64 + 0.5, bosons()).partner.is_some());
    }
}

#[test]
fn si_ground_state_scales_with_omega_star() {
    let be = species_lookup("Be9+").unwrap();
    let ring = RingConfig::with_alpha(be, 100, 100e-6, 0.3).unwrap();
    let g = ground_state(&ring);
    let c = ring.characterize();
    assert_eq!(g.level.n1, HalfInt::ZERO);
    assert!((g.level.omega / c.omega_star + 0.3).abs() < 1e-12);
    assert!((g.level.energy / c.e_star - 0.09).abs() < 1e-12);
}

#[test]
fn diameter_sweep_matches_si_chain() {
    let be = species_lookup("Be9+").unwrap();
    let b0 = 2.5e-7;
    let d0 = ionring::model::unit_flux_diameter(&be, b0, &ionring::CODATA_2018);
    let w0 = ionring::model::unit_flux_frequency(&be, b0);
    let grid: Vec<f64> = (1..=60).map(|i| i as f64 * 0.05).collect();
    let rows = diameter_sweep(bosons(), be.charge, b0, &grid).unwrap();
    for row in rows {
        let ring = RingConfig::new(be.clone(), 10, row.x * d0, b0).unwrap();
        let omega = ground_state(&ring).level.omega / w0;
        assert!((omega - row.omega).abs() < 1e-9, "x = {}: {} vs {}", row.x, omega, row.omega);
        if row.x < std::f64::consts::FRAC_1_SQRT_2 {
            assert_eq!(row.omega, -1.0);
        }
        assert!(row.omega.abs() <= 1.0 / (2.0 * row.x * row.x) + 1e-15);
    }
}

fn closed_form_levels(alpha: f64, half_integer: bool, count: usize) -> Vec<f64> {
    let offset = if half_integer { 0.5 } else { 0.0 };
    let mut e: Vec<f64> = (-20..=20).map(|k| (k as f64 + offset - alpha).powi(2)).collect();
    e.sort_by(f64::total_cmp);
    e.truncate(count);
    e
}

#[test]
fn rotor_matches_closed_form() {
    let opts = RotorOptions::default();
    for (alpha, sector) in [(0.3, RotorSector::Periodic), (0.1, RotorSector::Antiperiodic)] {
        let got = rotor_levels_reduced(alpha, sector, &opts).unwrap();
        let want = closed_form_levels(alpha, sector == RotorSector::Antiperiodic, 5);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-3 * w, "alpha {alpha}: {g} vs {w}");
        }
    }
}

#[test]
fn rotor_is_gauge_periodic() {
    let opts = RotorOptions::default();
    let a: Vec<f64> = rotor_levels_reduced(0.3, RotorSector::Periodic, &opts).unwrap();
    let b: Vec<f64> = rotor_levels_reduced(1.3, RotorSector::Periodic, &opts).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0), "{x} vs {y}");
    }
}

#[test]
fn rotor_oracle_in_joules() {
    let mg = species_lookup("Mg24+").unwrap();
    let ring = RingConfig::with_alpha(mg, 100, 100e-6, 0.25).unwrap();
    let c = ring.characterize();
    let e = rotor_oracle(&ring, &RotorOptions::default()).unwrap();
    // even-N fermions: n₁ = 1/2 is the ground level at α = 1/4
    assert!((e[0] / c.e_star - 0.0625).abs() < 1e-6);
}

#[test]
fn rotor_non_convergence_is_reported() {
    let opts = RotorOptions { max_iterations: 1, ..Default::default() };
    let err = rotor_levels_reduced(0.3, RotorSector::Periodic, &opts).unwrap_err();
    assert!(matches!(err, ionring::Error::Numerical(_)));
}
