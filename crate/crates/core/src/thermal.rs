//! Thermal averages over the collective-rotation levels.
//!
//! With τ = T/T* the Boltzmann weights are w_n = exp(−(n − α)²/τ) and the
//! average frequency is ω̄/ω* = Σ (n − α) w_n / Σ w_n over the admissible
//! ladder. The sums run over |n − α| ≤ K with K = max(8, ⌈12√τ⌉) and every
//! result carries an explicit bound on what the truncation and rounding can
//! have changed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{RingConfig, Statistics};
use crate::quantum::{cmp_distance, HalfInt};
use crate::scalar::{lit, to_f64, Real};
use crate::spectrum::Ladder;
use crate::summation::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint<T = f64> {
    /// Absolute temperature, K, when the point was requested in SI units.
    pub temperature: Option<T>,
    pub t_over_tstar: T,
    pub alpha: T,
    pub omega_bar_over_omegastar: T,
    pub partition_function: T,
    pub truncation_halfwidth: u64,
    /// Upper bound on |exact − returned| for ω̄/ω*: neglected tail plus
    /// accumulated rounding.
    pub tail_bound: T,
}

/// K = max(8, ⌈12√τ⌉).
pub fn truncation_halfwidth<T: Real>(t_over_tstar: T) -> u64 {
    let k = (lit::<T>(12.0) * t_over_tstar.sqrt()).ceil();
    (to_f64(k) as u64).max(8)
}

fn check_temperature<T: Real>(t_over_tstar: T) -> Result<()> {
    if !(t_over_tstar > T::zero()) || !t_over_tstar.is_finite() {
        return Err(Error::Domain(format!(
            "T/T* must be positive and finite (got {}); use the ground state for T = 0",
            to_f64(t_over_tstar)
        )));
    }
    Ok(())
}

/// Boltzmann sums with a caller-chosen half-width K ≥ 1.
pub fn thermal_point_with_halfwidth<T: Real>(alpha: T, t_over_tstar: T, ladder: Ladder, halfwidth: u64) -> Result<ThermalPoint<T>> {
    check_temperature(t_over_tstar)?;
    if halfwidth == 0 || !alpha.is_finite() {
        return Err(Error::Domain("thermal sum needs a finite flux and a positive half-width".into()));
    }
    let tau = t_over_tstar;
    let k = lit::<T>(halfwidth as f64);

    let alpha_f = to_f64(alpha);
    let lo = HalfInt::from_int((alpha_f - halfwidth as f64).floor() as i64 - 1);
    let hi = HalfInt::from_int((alpha_f + halfwidth as f64).ceil() as i64 + 1);
    let mut terms: Vec<HalfInt> = (lo.twice()..=hi.twice())
        .map(HalfInt::from_twice)
        .filter(|&n| ladder.admits(n) && (n.to_real::<T>() - alpha).abs() <= k)
        .collect();
    terms.sort_by(|&a, &b| cmp_distance(a, b, alpha_f));

    let mut z = CompensatedSum::new();
    let mut s = CompensatedSum::new();
    let mut s_abs = CompensatedSum::new();
    for n in terms {
        let x = n.to_real::<T>() - alpha;
        let w = (-(x * x) / tau).exp();
        z.add(w);
        s.add(x * w);
        s_abs.add(x.abs() * w);
    }
    let z = z.value();
    // Symmetric weights about α (2α integer on either ladder) give exactly zero.
    let symmetric = (lit::<T>(2.0) * alpha).fract() == T::zero();
    let omega = if symmetric { T::zero() } else { s.value() / z };

    let tail = (-(k * k) / tau).exp();
    let two = lit::<T>(2.0);
    let z_tail = two * (T::one() + tau / (two * k)) * tail;
    let s_tail = two * (k + tau / two) * tail;
    let rounding = lit::<T>(8.0) * T::epsilon() * (s_abs.value() / z + omega.abs());
    let tail_bound = (omega.abs() * z_tail + s_tail) / z + rounding;

    Ok(ThermalPoint {
        temperature: None,
        t_over_tstar,
        alpha,
        omega_bar_over_omegastar: omega,
        partition_function: z,
        truncation_halfwidth: halfwidth,
        tail_bound,
    })
}

/// ω̄/ω* and Z at reduced temperature τ = T/T*.
pub fn thermal_point<T: Real>(alpha: T, t_over_tstar: T, statistics: Statistics, n_ions: usize) -> Result<ThermalPoint<T>> {
    check_temperature(t_over_tstar)?;
    thermal_point_with_halfwidth(alpha, t_over_tstar, Ladder::new(statistics, n_ions), truncation_halfwidth(t_over_tstar))
}

/// Z = Σ_n exp(−E_n/k_BT).
pub fn partition_function<T: Real>(alpha: T, t_over_tstar: T, statistics: Statistics, n_ions: usize) -> Result<T> {
    Ok(thermal_point(alpha, t_over_tstar, statistics, n_ions)?.partition_function)
}

/// ω̄/ω*.
pub fn thermal_average_frequency<T: Real>(alpha: T, t_over_tstar: T, statistics: Statistics, n_ions: usize) -> Result<T> {
    Ok(thermal_point(alpha, t_over_tstar, statistics, n_ions)?.omega_bar_over_omegastar)
}

/// SI entry point: temperature in kelvin, flux and T* taken from the ring.
pub fn thermal_point_for_ring<T: Real>(ring: &RingConfig<T>, kelvin: T) -> Result<ThermalPoint<T>> {
    let c = ring.characterize();
    let mut p = thermal_point(c.alpha, kelvin / c.t_star, ring.statistics(), ring.n_ions)?;
    p.temperature = Some(kelvin);
    Ok(p)
}

/// One point per (α, τ), α-major in input order.
pub fn thermal_curve<T: Real>(alphas: &[T], taus: &[T], statistics: Statistics, n_ions: usize) -> Result<Vec<ThermalPoint<T>>> {
    let pairs: Vec<(T, T)> = alphas.iter().flat_map(|&a| taus.iter().map(move |&t| (a, t))).collect();
    pairs
        .par_iter()
        .map(|&(a, t)| thermal_point(a, t, statistics, n_ions))
        .collect()
}

/// T* = E*/k_B, K.
pub fn characteristic_temperature<T: Real>(ring: &RingConfig<T>) -> T {
    ring.characterize().t_star
}
