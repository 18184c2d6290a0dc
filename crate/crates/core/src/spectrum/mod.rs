//! Quantized collective-rotation levels E = E*(n₁ − α)², ω = ω*(n₁ − α).
//!
//! Bosons and odd-N fermions use integer n₁, even-N fermions use
//! half-odd-integers. Relative vibrations are frozen in their ground state.

mod rotor;

pub use rotor::{rotor_levels_reduced, rotor_oracle, RotorOptions, RotorSector};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{RingConfig, Statistics};
use crate::quantum::HalfInt;
use crate::scalar::{lit, to_f64, Real};

/// Half-width of the brute-force search around round(α).
pub const GROUND_SEARCH_HALFWIDTH: i64 = 5;

/// Relative energy tolerance (in E*) under which two levels count as tied.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// The set of admissible n₁ for given statistics and particle number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ladder {
    pub statistics: Statistics,
    pub n_ions: usize,
}

impl Ladder {
    pub fn new(statistics: Statistics, n_ions: usize) -> Self {
        Ladder { statistics, n_ions }
    }

    pub fn of<T>(ring: &RingConfig<T>) -> Self {
        Ladder::new(ring.species.statistics, ring.n_ions)
    }

    pub fn is_half_integer(&self) -> bool {
        self.statistics == Statistics::Fermion && self.n_ions % 2 == 0
    }

    /// 0 for the integer ladder, 1/2 for the half-odd-integer ladder.
    pub fn offset(&self) -> HalfInt {
        if self.is_half_integer() {
            HalfInt::HALF
        } else {
            HalfInt::ZERO
        }
    }

    pub fn admits(&self, n1: HalfInt) -> bool {
        n1.is_integer() != self.is_half_integer()
    }

    /// All admissible values in [lo, hi] (inclusive, in units of one).
    fn between(&self, lo: HalfInt, hi: HalfInt) -> Vec<HalfInt> {
        let mut start = lo.twice();
        if !self.admits(HalfInt::from_twice(start)) {
            start += 1;
        }
        (start..=hi.twice()).step_by(2).map(HalfInt::from_twice).collect()
    }

    /// Admissible values within `half_width` of round(α), ascending.
    pub fn around<T: Real>(&self, alpha: T, half_width: i64) -> Vec<HalfInt> {
        let centre = to_f64(alpha).round() as i64;
        self.between(
            HalfInt::from_int(centre - half_width),
            HalfInt::from_int(centre + half_width),
        )
    }
}

/// Admissible n₁ in [−window, window], ascending.
pub fn admissible_quantum_numbers(statistics: Statistics, n_ions: usize, window: u32) -> Result<Vec<HalfInt>> {
    if window < 1 {
        return Err(Error::Domain("quantum-number window must be at least 1".into()));
    }
    let w = HalfInt::from_int(window as i64);
    Ok(Ladder::new(statistics, n_ions).between(-w, w))
}

/// (n₁ − α)² and (n₁ − α): energy and frequency in units of E* and ω*.
#[inline]
pub fn reduced_level<T: Real>(n1: HalfInt, alpha: T) -> (T, T) {
    let x = n1.to_real::<T>() - alpha;
    (x * x, x)
}

/// One eigenstate of the collective rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationalLevel<T = f64> {
    pub n1: HalfInt,
    /// J.
    pub energy: T,
    /// rad/s, signed.
    pub omega: T,
    /// E / E*.
    pub energy_reduced: T,
    /// ω / ω*.
    pub omega_reduced: T,
}

impl<T: Real> RotationalLevel<T> {
    fn build(n1: HalfInt, alpha: T, e_star: T, omega_star: T) -> Self {
        let (e, w) = reduced_level(n1, alpha);
        RotationalLevel { n1, energy: e * e_star, omega: w * omega_star, energy_reduced: e, omega_reduced: w }
    }
}

fn parity_error(n1: HalfInt, ladder: Ladder) -> Error {
    let parity = if ladder.n_ions % 2 == 0 { "even" } else { "odd" };
    let expected = if ladder.is_half_integer() { "half-odd-integer" } else { "integer" };
    Error::Domain(format!(
        "n1 = {n1} is not admissible for {} statistics with {parity} N = {} (expected {expected})",
        ladder.statistics, ladder.n_ions
    ))
}

pub fn level<T: Real>(n1: HalfInt, ring: &RingConfig<T>) -> Result<RotationalLevel<T>> {
    let ladder = Ladder::of(ring);
    if !ladder.admits(n1) {
        return Err(parity_error(n1, ladder));
    }
    let c = ring.characterize();
    Ok(RotationalLevel::build(n1, c.alpha, c.e_star, c.omega_star))
}

/// Ground state of the collective rotation in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedGround<T = f64> {
    pub n1: HalfInt,
    /// (n₁ − α)².
    pub energy: T,
    /// n₁ − α.
    pub omega: T,
    /// The other minimizer when two levels tie; it has the larger n₁.
    pub partner: Option<(HalfInt, T)>,
}

impl<T: Real> ReducedGround<T> {
    pub fn is_degenerate(&self) -> bool {
        self.partner.is_some()
    }
}

/// Lowest levels by brute force over the ladder near α, sorted by energy then n₁.
fn lowest_levels<T: Real>(alpha: T, ladder: Ladder) -> Vec<(HalfInt, T)> {
    let mut levels: Vec<(HalfInt, T)> = ladder
        .around(alpha, GROUND_SEARCH_HALFWIDTH)
        .into_iter()
        .map(|n| (n, reduced_level(n, alpha).0))
        .collect();
    levels.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite energies").then(a.0.cmp(&b.0)));
    levels
}

pub fn reduced_ground_state<T: Real>(alpha: T, ladder: Ladder) -> ReducedGround<T> {
    let levels = lowest_levels(alpha, ladder);
    let (mut n1, e0) = levels[0];
    let (mut other, e1) = levels[1];
    let tied = (e1 - e0).abs() < lit(DEGENERACY_TOLERANCE);
    if tied && other < n1 {
        std::mem::swap(&mut n1, &mut other);
    }
    ReducedGround {
        n1,
        energy: reduced_level(n1, alpha).0,
        omega: reduced_level(n1, alpha).1,
        partner: tied.then(|| (other, reduced_level(other, alpha).1)),
    }
}

/// Ground level with an explicit degeneracy flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundState<T = f64> {
    pub level: RotationalLevel<T>,
    pub degenerate: bool,
    pub partner: Option<RotationalLevel<T>>,
}

pub fn ground_state<T: Real>(ring: &RingConfig<T>) -> GroundState<T> {
    let c = ring.characterize();
    let g = reduced_ground_state(c.alpha, Ladder::of(ring));
    GroundState {
        level: RotationalLevel::build(g.n1, c.alpha, c.e_star, c.omega_star),
        degenerate: g.is_degenerate(),
        partner: g.partner.map(|(n, _)| RotationalLevel::build(n, c.alpha, c.e_star, c.omega_star)),
    }
}

/// Ground-to-first-excited gap in units of E*; zero at a tie.
pub fn reduced_energy_gap<T: Real>(alpha: T, ladder: Ladder) -> T {
    let g = reduced_ground_state(alpha, ladder);
    if g.is_degenerate() {
        return T::zero();
    }
    let levels = lowest_levels(alpha, ladder);
    levels[1].1 - levels[0].1
}

/// Ground-to-first-excited gap, J.
pub fn energy_gap<T: Real>(ring: &RingConfig<T>) -> T {
    let c = ring.characterize();
    reduced_energy_gap(c.alpha, Ladder::of(ring)) * c.e_star
}

/// ΔE_rigid = 2ℏ²/(NMd²), J: the largest gap when all particles are distinguishable.
pub fn rigid_gap<T: Real>(ring: &RingConfig<T>) -> T {
    let c = ring.characterize();
    let n = crate::scalar::count::<T>(ring.n_ions);
    ring.hbar() * c.omega_star / (lit::<T>(2.0) * n)
}

/// One row of a flux sweep, reduced units.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxRow<T = f64> {
    pub alpha: T,
    /// E/E* for each entry of [`FluxSweep::quantum_numbers`].
    pub energies: Vec<T>,
    /// Ground ω/ω*; at a tie this is the branch with the smaller n₁.
    pub omega_gs: T,
    pub degenerate: bool,
    /// ω/ω* of the other branch at a tie.
    pub partner_omega: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxSweep<T = f64> {
    pub ladder: Ladder,
    pub quantum_numbers: Vec<HalfInt>,
    pub rows: Vec<FluxRow<T>>,
}

/// Parabola family and ground-frequency sawtooth over a flux grid.
pub fn flux_sweep<T: Real>(ladder: Ladder, alphas: &[T], level_window: u32) -> Result<FluxSweep<T>> {
    let quantum_numbers = admissible_quantum_numbers(ladder.statistics, ladder.n_ions, level_window)?;
    if alphas.iter().any(|a| !a.is_finite()) {
        return Err(Error::Domain("flux grid contains a non-finite value".into()));
    }
    let rows = alphas
        .par_iter()
        .map(|&alpha| {
            let g = reduced_ground_state(alpha, ladder);
            FluxRow {
                alpha,
                energies: quantum_numbers.iter().map(|&n| reduced_level(n, alpha).0).collect(),
                omega_gs: g.omega,
                degenerate: g.is_degenerate(),
                partner_omega: g.partner.map(|(_, w)| w),
            }
        })
        .collect();
    Ok(FluxSweep { ladder, quantum_numbers, rows })
}

/// One row of a diameter sweep at fixed field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterRow<T = f64> {
    /// d/d₀.
    pub x: T,
    /// ω/ω*₀.
    pub omega: T,
    pub n1: HalfInt,
    pub degenerate: bool,
}

/// Persistent rotation versus normalized diameter x = d/d₀ in a fixed field B₀ > 0.
///
/// α = sign(q)·x², and since ω*·|α| = ω*₀ the frequency is ω/ω*₀ = (n₁* − α)/|α|.
pub fn diameter_sweep<T: Real>(ladder: Ladder, charge_sign: T, b0: T, grid: &[T]) -> Result<Vec<DiameterRow<T>>> {
    if !(b0 > T::zero()) {
        return Err(Error::Domain("diameter sweep needs B0 > 0".into()));
    }
    if let Some(x) = grid.iter().find(|x| !(**x > T::zero()) || !x.is_finite()) {
        return Err(Error::Domain(format!("d/d0 grid values must be positive, got {x}")));
    }
    let sign = if charge_sign < T::zero() { -T::one() } else { T::one() };
    Ok(grid
        .par_iter()
        .map(|&x| {
            let alpha = sign * x * x;
            let g = reduced_ground_state(alpha, ladder);
            DiameterRow { x, omega: g.omega / alpha.abs(), n1: g.n1, degenerate: g.is_degenerate() }
        })
        .collect())
}
