//! Equilibrium and small-oscillation normal modes of N charges on a ring.
//!
//! Angles are measured in radians. With chord distance d·sin(Δθ/2) the
//! Coulomb energy is (q²/4πε₀d)·u(θ) with u(θ) = Σ_{i<j} 1/sin(|θ_i−θ_j|/2).
//! The normalized mode frequencies are ω_j = sqrt(λ_j/2), where λ_j are the
//! eigenvalues of the Hessian of u at equilibrium.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::RingConfig;
use crate::scalar::{count, lit, Real};

/// Ion angles in radians on [0, 2π), ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularConfiguration<T = f64> {
    pub angles: Vec<T>,
}

/// Normalized normal-mode frequencies, ascending, with their mode vectors.
#[derive(Debug, Clone)]
pub struct ModeSpectrum<T = f64> {
    pub n_ions: usize,
    /// ω_j, ascending; `frequencies[0]` is the rotation mode and is exactly 0.
    pub frequencies: Vec<T>,
    /// Hessian eigenvalues λ_j = 2ω_j² before clamping, same order.
    pub eigenvalues: Vec<T>,
    /// Column j is the orthonormal direction of normal coordinate q_{j+1}.
    pub mode_vectors: DMatrix<T>,
}

impl<T: Real> ModeSpectrum<T> {
    /// Lowest relative-vibration frequency ω₂.
    pub fn lowest_vibration(&self) -> T {
        self.frequencies[1]
    }

    pub fn mode_vector(&self, j: usize) -> DVector<T> {
        self.mode_vectors.column(j).into_owned()
    }
}

fn require_pair(n_ions: usize) -> Result<()> {
    if n_ions < 2 {
        Err(Error::Domain(format!("normal modes need at least 2 ions, got {n_ions}")))
    } else {
        Ok(())
    }
}

/// f(Δ) = 1/sin(Δ/2) for Δ in (0, 2π).
pub fn pair_potential<T: Real>(delta: T) -> T {
    T::one() / (delta / lit(2.0)).sin().abs()
}

/// f''(Δ) = cos²(Δ/2)/(2 sin³(Δ/2)) + 1/(4 sin(Δ/2)).
pub fn pair_curvature<T: Real>(delta: T) -> T {
    let half = delta / lit(2.0);
    let (s, c) = (half.sin().abs(), half.cos());
    c * c / (lit::<T>(2.0) * s * s * s) + T::one() / (lit::<T>(4.0) * s)
}

/// Equally spaced angles θ_j = 2πj/N.
pub fn equilibrium_positions<T: Real>(n_ions: usize) -> Result<AngularConfiguration<T>> {
    require_pair(n_ions)?;
    let n = count::<T>(n_ions);
    Ok(AngularConfiguration {
        angles: (0..n_ions).map(|j| T::two_pi() * count::<T>(j) / n).collect(),
    })
}

/// Hessian of u at an arbitrary configuration.
pub fn hessian_at<T: Real>(config: &AngularConfiguration<T>) -> DMatrix<T> {
    let n = config.angles.len();
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let delta = (config.angles[j] - config.angles[i]).abs() % T::two_pi();
            let k = pair_curvature(delta);
            h[(i, j)] = -k;
            h[(j, i)] = -k;
            h[(i, i)] += k;
            h[(j, j)] += k;
        }
    }
    h
}

/// Hessian of u at the equilibrium ring. Symmetric, circulant, zero row sums.
pub fn dimensionless_hessian<T: Real>(n_ions: usize) -> Result<DMatrix<T>> {
    require_pair(n_ions)?;
    let n = count::<T>(n_ions);
    // f'' for separation index m = 1..N-1, computed once so rows are exact shifts
    let curv: Vec<T> = (0..n_ions)
        .map(|m| {
            if m == 0 {
                T::zero()
            } else {
                pair_curvature(T::two_pi() * count::<T>(m) / n)
            }
        })
        .collect();
    let diag = (1..n_ions).fold(T::zero(), |acc, m| acc + curv[m.min(n_ions - m)]);
    Ok(DMatrix::from_fn(n_ions, n_ions, |i, j| {
        if i == j {
            diag
        } else {
            {
            let m = (j + n_ions - i) % n_ions;
            -curv[m.min(n_ions - m)]
        }
        }
    }))
}

fn frequency_of<T: Real>(lambda: T) -> T {
    (lambda.max(T::zero()) / lit(2.0)).sqrt()
}

/// Dense diagonalization of the equilibrium Hessian.
///
/// The uniform rotation direction is split off exactly with a Householder
/// reflection before diagonalizing, so ω₁ is exactly zero and its vector is
/// exactly (1,…,1)/√N. Vectors inside degenerate pairs are an arbitrary
/// orthonormal basis of the pair's eigenspace.
pub fn mode_spectrum<T: Real>(n_ions: usize) -> Result<ModeSpectrum<T>> {
    let hessian = dimensionless_hessian::<T>(n_ions)?;
    let n = n_ions;
    let uniform = DVector::from_element(n, T::one() / count::<T>(n).sqrt());

    // R = I - 2vvᵀ/(vᵀv) with v = u - e₀ maps u onto e₀.
    let mut v = uniform.clone();
    v[0] -= T::one();
    let vv = v.dot(&v);
    let reflector = DMatrix::<T>::identity(n, n) - (&v * v.transpose()) * (lit::<T>(2.0) / vv);
    let rotated = &reflector * &hessian * &reflector;
    let block = rotated.view((1, 1), (n - 1, n - 1)).into_owned();
    let block = (&block + block.transpose()) * lit::<T>(0.5);

    let max_iter = 1000 * n;
    let eig = SymmetricEigen::try_new(block.clone(), T::epsilon(), max_iter).ok_or_else(|| {
        Error::Numerical(format!(
            "symmetric eigensolver did not converge in {max_iter} sweeps (N = {n}, ‖H‖_F = {:e}, max|H_ij| = {:e})",
            crate::scalar::to_f64(block.norm()),
            crate::scalar::to_f64(block.amax()),
        ))
    })?;

    let mut order: Vec<usize> = (0..n - 1).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite eigenvalues"));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = DMatrix::zeros(n, n);
    eigenvalues.push(T::zero());
    vectors.set_column(0, &uniform);
    for (col, &k) in order.iter().enumerate() {
        eigenvalues.push(eig.eigenvalues[k]);
        let mut padded = DVector::zeros(n);
        padded.rows_mut(1, n - 1).copy_from(&eig.eigenvectors.column(k));
        let back = &reflector * padded;
        vectors.set_column(col + 1, &back);
    }

    Ok(ModeSpectrum {
        n_ions,
        frequencies: eigenvalues.iter().map(|&l| frequency_of(l)).collect(),
        eigenvalues,
        mode_vectors: vectors,
    })
}

/// Hessian eigenvalues from the circulant closed form
/// λ_k = Σ_{m=1}^{N−1} f''(2πm/N)(1 − cos(2πkm/N)), in k order (unsorted).
pub fn circulant_eigenvalues<T: Real>(n_ions: usize) -> Result<Vec<T>> {
    require_pair(n_ions)?;
    let n = count::<T>(n_ions);
    let curv: Vec<T> = (1..n_ions).map(|m| pair_curvature(T::two_pi() * count::<T>(m) / n)).collect();
    Ok((0..n_ions)
        .map(|k| {
            (1..n_ions).fold(T::zero(), |acc, m| {
                let phase = T::two_pi() * count::<T>((k * m) % n_ions) / n;
                acc + curv[m - 1] * (T::one() - phase.cos())
            })
        })
        .collect())
}

/// Normalized frequencies from the circulant closed form, ascending.
pub fn circulant_frequencies<T: Real>(n_ions: usize) -> Result<Vec<T>> {
    let mut w: Vec<T> = circulant_eigenvalues::<T>(n_ions)?.into_iter().map(frequency_of).collect();
    w.sort_by(|a, b| a.partial_cmp(b).expect("finite frequencies"));
    Ok(w)
}

/// Upper bound below which the ions form a Wigner ring crystal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrystallizationBound<T = f64> {
    /// T_c = Nq²/(2π²ε₀k_B d), K. The crystal regime is T ≪ T_c.
    pub kelvin: T,
    /// False for a single particle, where there is no pair interaction.
    pub meaningful: bool,
}

pub fn crystallization_temperature<T: Real>(ring: &RingConfig<T>) -> CrystallizationBound<T> {
    let q = ring.species.charge.abs();
    let eps0 = lit::<T>(ring.constants.vacuum_permittivity);
    let k_b = lit::<T>(ring.constants.boltzmann);
    let kelvin = count::<T>(ring.n_ions) * (q / eps0) * (q / k_b)
        / (lit::<T>(2.0) * T::pi() * T::pi() * ring.diameter);
    CrystallizationBound { kelvin, meaningful: ring.n_ions >= 2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::species_lookup;
    use std::f64::consts::PI;

    #[test]
    fn small_equilibria() {
        assert_eq!(equilibrium_positions::<f64>(2).unwrap().angles, vec![0.0, PI]);
        let four = equilibrium_positions::<f64>(4).unwrap().angles;
        for (a, b) in four.iter().zip([0.0, PI / 2.0, PI, 1.5 * PI]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(equilibrium_positions::<f64>(1).is_err());
        assert!(dimensionless_hessian::<f64>(1).is_err());
        assert!(mode_spectrum::<f64>(0).is_err());
    }

    #[test]
    fn two_ion_hessian() {
        let h = dimensionless_hessian::<f64>(2).unwrap();
        assert!((h[(0, 0)] - 0.25).abs() < 1e-15);
        assert!((h[(0, 1)] + 0.25).abs() < 1e-15);
        let general = hessian_at(&equilibrium_positions::<f64>(2).unwrap());
        assert!((general - h).amax() < 1e-15);
    }

    #[test]
    fn hessian_rows_sum_to_zero() {
        for n in [2, 3, 7, 10, 64] {
            let h = dimensionless_hessian::<f64>(n).unwrap();
            let scale = h.amax();
            for i in 0..n {
                assert!(h.row(i).sum().abs() <= 1e-10 * scale.max(1.0));
            }
            assert_eq!(h.transpose(), h);
        }
    }

    #[test]
    fn ten_ion_anchor() {
        let s = mode_spectrum::<f64>(10).unwrap();
        assert_eq!(s.frequencies[0], 0.0);
        assert!((s.lowest_vibration() - 2.48).abs() < 0.005, "{}", s.lowest_vibration());
        assert!((s.frequencies[1] - s.frequencies[2]).abs() < 1e-9);
        let w = circulant_frequencies::<f64>(10).unwrap();
        assert!((w[1] - 2.48).abs() < 0.005);
    }

    #[test]
    fn rotation_mode_is_uniform() {
        let s = mode_spectrum::<f64>(9).unwrap();
        let v = s.mode_vector(0);
        for x in v.iter() {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
        let gram = s.mode_vectors.transpose() * &s.mode_vectors;
        assert!((gram - DMatrix::identity(9, 9)).amax() < 1e-10);
    }

    #[test]
    fn zero_circulant_eigenvalue_is_exact() {
        for n in [2, 5, 33] {
            assert_eq!(circulant_eigenvalues::<f64>(n).unwrap()[0], 0.0);
        }
    }

    #[test]
    fn single_precision_spectrum() {
        let s32 = mode_spectrum::<f32>(10).unwrap();
        let s64 = mode_spectrum::<f64>(10).unwrap();
        for (a, b) in s32.frequencies.iter().zip(&s64.frequencies) {
            assert!((*a as f64 - b).abs() < 1e-4 * b.max(1.0));
        }
    }

    #[test]
    fn crystallization_bound() {
        let be = species_lookup("Be9+").unwrap();
        let ring = RingConfig::new(be, 100, 100e-6, 0.0).unwrap();
        let tc = crystallization_temperature(&ring);
        // 100·e²/(2π²·ε₀·k_B·1e-4 m)
        assert!((tc.kelvin / 10.638 - 1.0).abs() < 1e-3, "{}", tc.kelvin);
        assert!(tc.meaningful);
        assert_eq!(crystallization_temperature(&ring.with_n_ions(200)).kelvin, 2.0 * tc.kelvin);
        let single = crystallization_temperature(&ring.with_n_ions(1));
        assert!(single.kelvin > 0.0 && !single.meaningful);
    }
}
