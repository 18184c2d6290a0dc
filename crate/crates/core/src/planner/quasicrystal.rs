//! Commensurability of the rotation frequencies of two concentric rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::RingConfig;
use crate::scalar::{to_f64, Real};
use crate::spectrum::ground_state;

pub const DEFAULT_Q_MAX: u64 = 1000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Commensurability {
    /// ratio ≈ p/q in lowest terms.
    Commensurate { p: i64, q: u64 },
    Incommensurate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasicrystalAnalysis {
    /// ω_gs(ring 2) / ω_gs(ring 1).
    pub ratio: f64,
    pub classification: Commensurability,
    pub tolerance: f64,
    pub q_max: u64,
    /// Continued-fraction convergents with denominator ≤ q_max.
    #[serde(serialize_with = "ser_rationals")]
    pub convergents: Vec<Rational64>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| format!("{}/{}", r.numer(), r.denom())))
}

/// Convergents and intermediate fractions of |x| with denominator ≤ q_max,
/// in order of increasing denominator. Computed exactly from the binary value.
fn best_approximations(x: f64, q_max: u64) -> (Vec<(BigInt, BigInt)>, Vec<(BigInt, BigInt)>) {
    let mut convergents = Vec::new();
    let mut candidates = Vec::new();
    let Some(exact) = BigRational::from_float(x.abs()) else {
        return (convergents, candidates);
    };
    let q_max = BigInt::from(q_max);
    let (mut num, mut den) = (exact.numer().clone(), exact.denom().clone());
    // h/k two steps back and one step back
    let (mut h2, mut k2) = (BigInt::zero(), BigInt::from(1));
    let (mut h1, mut k1) = (BigInt::from(1), BigInt::zero());
    while !den.is_zero() {
        let (a, rem) = num.div_mod_floor(&den);
        // intermediate fractions (h2 + m·h1)/(k2 + m·k1) for 1 ≤ m < a
        let mut m = BigInt::from(1);
        while m < a {
            let k = &k2 + &m * &k1;
            if k > q_max {
                break;
            }
            if !k.is_zero() {
                candidates.push((&h2 + &m * &h1, k));
            }
            m += 1;
        }
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if k > q_max {
            break;
        }
        convergents.push((h.clone(), k.clone()));
        candidates.push((h.clone(), k.clone()));
        (h2, k2, h1, k1) = (h1, k1, h, k);
        (num, den) = (den, rem);
    }
    (convergents, candidates)
}

/// |x − p/q| evaluated in floating point.
pub(crate) fn distance(x: f64, p: i64, q: u64) -> f64 {
    (x - p as f64 / q as f64).abs()
}

fn to_rational(sign: i64, (h, k): &(BigInt, BigInt)) -> Option<Rational64> {
    Some(Rational64::new(sign * h.to_i64()?, k.to_i64()?))
}

pub fn continued_fraction_convergents(x: f64, q_max: u64) -> Vec<Rational64> {
    let sign = if x < 0.0 { -1 } else { 1 };
    best_approximations(x, q_max).0.iter().filter_map(|c| to_rational(sign, c)).collect()
}

/// Smallest-denominator p/q with q ≤ q_max and |x − p/q| ≤ tolerance.
///
/// That fraction is a best approximation of the first kind, so only
/// convergents and intermediate fractions need to be examined.
pub fn classify_ratio(x: f64, q_max: u64, tolerance: f64) -> (Commensurability, Vec<Rational64>) {
    let sign = if x < 0.0 { -1 } else { 1 };
    let (conv, mut candidates) = best_approximations(x, q_max);
    candidates.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.abs().cmp(&b.0.abs())));
    let class = candidates
        .iter()
        .filter_map(|c| to_rational(sign, c))
        .find(|r| distance(x, *r.numer(), *r.denom() as u64) <= tolerance)
        .map(|r| Commensurability::Commensurate { p: *r.numer(), q: *r.denom() as u64 })
        .unwrap_or(Commensurability::Incommensurate);
    let convergents = conv.iter().filter_map(|c| to_rational(sign, c)).collect();
    (class, convergents)
}

/// Ratio of the ground-state rotation frequencies of two non-interacting
/// rings in the same field, classified against rationals p/q with q ≤ q_max.
pub fn quasicrystal_analysis<T: Real>(
    ring1: &RingConfig<T>,
    ring2: &RingConfig<T>,
    q_max: u64,
    tolerance: f64,
) -> Result<QuasicrystalAnalysis> {
    if q_max == 0 || !(tolerance >= 0.0) {
        return Err(Error::Domain("q_max must be ≥ 1 and tolerance non-negative".into()));
    }
    let (b1, b2) = (to_f64(ring1.b_field), to_f64(ring2.b_field));
    if (b1 - b2).abs() > 1e-12 * b1.abs().max(b2.abs()) {
        return Err(Error::Domain(format!("rings must share the magnetic field ({b1:e} T vs {b2:e} T)")));
    }
    let mut omegas = [0.0; 2];
    for (slot, (label, ring)) in omegas.iter_mut().zip([("ring 1", ring1), ("ring 2", ring2)]) {
        let g = ground_state(ring);
        if let (true, Some(p)) = (g.degenerate, g.partner) {
            return Err(Error::DegenerateGroundState {
                alpha: to_f64(ring.alpha()),
                lower: format!("{} ({label})", g.level.n1),
                upper: p.n1.to_string(),
            });
        }
        if g.level.omega == T::zero() {
            return Err(Error::Domain(format!("{label} does not rotate in its ground state")));
        }
        *slot = to_f64(g.level.omega);
    }
    let ratio = omegas[1] / omegas[0];
    let (classification, convergents) = classify_ratio(ratio, q_max, tolerance);
    Ok(QuasicrystalAnalysis { ratio, classification, tolerance, q_max, convergents })
}
