//! Finite-difference flux rotor used to check the closed-form levels.
//!
//! The collective coordinate is reduced to χ ∈ [0, 2π) so that the rotation
//! Hamiltonian becomes E*(−i∂_χ − α)². Exchange symmetry fixes the boundary
//! condition: periodic for the integer ladder, antiperiodic for the
//! half-odd-integer ladder. The covariant derivative is discretized with
//! Peierls phases on a uniform grid, and the lowest levels are found by
//! shift-invert subspace iteration with a cyclic tridiagonal solver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Ladder;
use crate::error::{Error, Result};
use crate::model::RingConfig;
use crate::scalar::{count, lit, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotorSector {
    Periodic,
    Antiperiodic,
}

impl RotorSector {
    pub fn for_ladder(ladder: Ladder) -> Self {
        if ladder.is_half_integer() {
            RotorSector::Antiperiodic
        } else {
            RotorSector::Periodic
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorOptions {
    pub grid_points: usize,
    pub levels: usize,
    /// Extra vectors carried in the iterated block.
    pub guard_vectors: usize,
    pub max_iterations: usize,
    /// Relative change of the wanted Ritz values accepted as converged.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for RotorOptions {
    fn default() -> Self {
        RotorOptions {
            grid_points: 4096,
            levels: 5,
            guard_vectors: 6,
            max_iterations: 500,
            tolerance: 1e-13,
            seed: 0x5eed,
        }
    }
}

type C<T> = Complex<T>;

/// Sparse Hermitian operator on the grid, in units of E*.
struct FluxRing<T: Real> {
    n: usize,
    diag: T,
    /// Coefficient of ψ_{j+1} in row j.
    up: C<T>,
    /// Coefficient of ψ_{j-1} in row j.
    down: C<T>,
    /// +1 or −1 applied across the wrap-around bond.
    twist: T,
    /// Peierls factor e^{−iαh}.
    hop: C<T>,
    inv_h: T,
}

impl<T: Real> FluxRing<T> {
    fn new(alpha: T, sector: RotorSector, n: usize) -> Self {
        let h = T::two_pi() / count::<T>(n);
        let inv_h2 = T::one() / (h * h);
        let phase = alpha * h;
        let (s, c) = (phase.sin(), phase.cos());
        FluxRing {
            n,
            diag: lit::<T>(2.0) * inv_h2,
            up: C::new(-c * inv_h2, s * inv_h2),
            down: C::new(-c * inv_h2, -s * inv_h2),
            twist: match sector {
                RotorSector::Periodic => T::one(),
                RotorSector::Antiperiodic => -T::one(),
            },
            hop: C::new(c, -s),
            inv_h: T::one() / h,
        }
    }

    /// Covariant forward difference (Dψ)_j = (e^{−iαh}ψ_{j+1} − ψ_j)/h, with H = D†D.
    ///
    /// Quadratic forms are taken as ‖Dψ‖², which keeps full relative precision
    /// on smooth vectors where ⟨ψ, Hψ⟩ loses about ε‖H‖ to cancellation.
    fn difference(&self, x: &[C<T>], out: &mut [C<T>]) {
        let n = self.n;
        for j in 0..n {
            let (next, w) = if j + 1 == n { (0, self.twist) } else { (j + 1, T::one()) };
            out[j] = (self.hop * x[next] * w - x[j]) * self.inv_h;
        }
    }
}

/// Prefactored Sherman–Morrison solver for (H − σ) x = b.
struct CyclicSolver<T: Real> {
    sub: C<T>,
    /// Modified super-diagonal from the forward sweep.
    c: Vec<C<T>>,
    pivot_inv: Vec<C<T>>,
    /// Tridiagonal solution for the rank-one correction.
    z: Vec<C<T>>,
    top_right: C<T>,
    gamma: C<T>,
}

impl<T: Real> CyclicSolver<T> {
    fn new(op: &FluxRing<T>, sigma: T) -> Self {
        let n = op.n;
        let d = C::from(op.diag - sigma);
        let top_right = op.down * op.twist; // row 0, column n−1
        let bottom_left = op.up * op.twist; // row n−1, column 0
        let gamma = -d;
        let mut diag = vec![d; n];
        diag[0] = d - gamma;
        diag[n - 1] = d - bottom_left * top_right / gamma;

        let mut c = vec![C::from(T::zero()); n];
        let mut pivot_inv = vec![C::from(T::zero()); n];
        pivot_inv[0] = C::from(T::one()) / diag[0];
        c[0] = op.up * pivot_inv[0];
        for i in 1..n {
            pivot_inv[i] = C::from(T::one()) / (diag[i] - op.down * c[i - 1]);
            c[i] = op.up * pivot_inv[i];
        }
        let mut solver = CyclicSolver { sub: op.down, c, pivot_inv, z: Vec::new(), top_right, gamma };
        let mut u = vec![C::from(T::zero()); n];
        u[0] = gamma;
        u[n - 1] = bottom_left;
        solver.z = solver.sweep(&u);
        solver
    }

    fn sweep(&self, rhs: &[C<T>]) -> Vec<C<T>> {
        let n = rhs.len();
        let mut x = vec![C::from(T::zero()); n];
        x[0] = rhs[0] * self.pivot_inv[0];
        for i in 1..n {
            x[i] = (rhs[i] - self.sub * x[i - 1]) * self.pivot_inv[i];
        }
        for i in (0..n - 1).rev() {
            let next = x[i + 1];
            x[i] -= self.c[i] * next;
        }
        x
    }

    fn solve(&self, b: &[C<T>]) -> Vec<C<T>> {
        let n = b.len();
        let x = self.sweep(b);
        let z = &self.z;
        let fact = (x[0] + self.top_right * x[n - 1] / self.gamma)
            / (C::from(T::one()) + z[0] + self.top_right * z[n - 1] / self.gamma);
        x.iter().zip(z).map(|(&xi, &zi)| xi - fact * zi).collect()
    }
}

/// Modified Gram–Schmidt on the columns, in place.
fn orthonormalize<T: Real>(m: &mut DMatrix<C<T>>) -> Result<()> {
    for j in 0..m.ncols() {
        for k in 0..j {
            let proj = m.column(k).dotc(&m.column(j));
            let qk = m.column(k).into_owned();
            m.column_mut(j).axpy(-proj, &qk, C::from(T::one()));
        }
        let norm = m.column(j).norm();
        if !(norm > T::zero()) {
            return Err(Error::Numerical("rotor subspace collapsed during orthonormalization".into()));
        }
        m.column_mut(j).unscale_mut(norm);
    }
    Ok(())
}

/// Lowest `levels` eigenvalues of E*(−i∂_χ − α)² on the grid, in units of E*.
pub fn rotor_levels_reduced<T: Real>(alpha: T, sector: RotorSector, options: &RotorOptions) -> Result<Vec<T>> {
    let n = options.grid_points;
    if n < 256 {
        return Err(Error::Domain(format!("rotor grid needs at least 256 points, got {n}")));
    }
    if options.levels == 0 {
        return Err(Error::Domain("rotor oracle asked for zero levels".into()));
    }
    let block = options.levels + options.guard_vectors;
    if block >= n {
        return Err(Error::Domain("rotor block larger than the grid".into()));
    }
    let op = FluxRing::new(alpha, sector, n);
    // The operator is non-negative, so any negative shift makes H − σ definite.
    let sigma = -T::one();

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut basis = DMatrix::from_fn(n, block, |_, _| {
        C::new(lit::<T>(rng.random::<f64>() - 0.5), lit::<T>(rng.random::<f64>() - 0.5))
    });
    orthonormalize(&mut basis)?;

    let solver = CyclicSolver::new(&op, sigma);
    let mut previous: Option<Vec<T>> = None;
    let mut dx = vec![C::from(T::zero()); n];
    for _ in 0..options.max_iterations {
        for j in 0..block {
            let col: Vec<C<T>> = basis.column(j).iter().copied().collect();
            let solved = solver.solve(&col);
            basis.column_mut(j).copy_from_slice(&solved);
        }
        orthonormalize(&mut basis)?;

        // Rayleigh–Ritz with the projected form (DQ)†(DQ).
        let mut applied = DMatrix::zeros(n, block);
        for j in 0..block {
            let col: Vec<C<T>> = basis.column(j).iter().copied().collect();
            op.difference(&col, &mut dx);
            applied.column_mut(j).copy_from_slice(&dx);
        }
        let projected = applied.adjoint() * &applied;
        let projected = (&projected + projected.adjoint()) * C::from(lit::<T>(0.5));
        let eig = SymmetricEigen::new(projected);
        let mut order: Vec<usize> = (0..block).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).expect("finite Ritz values"));
        let ritz: Vec<T> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut rotated = DMatrix::zeros(block, block);
        for (col, &k) in order.iter().enumerate() {
            rotated.set_column(col, &eig.eigenvectors.column(k));
        }
        basis = &basis * rotated;

        let wanted = ritz[..options.levels].to_vec();
        if let Some(prev) = &previous {
            let tol = lit::<T>(options.tolerance);
            let converged = wanted
                .iter()
                .zip(prev)
                .all(|(&a, &b)| (a - b).abs() <= tol * a.abs().max(T::one()));
            if converged {
                return Ok(wanted);
            }
        }
        previous = Some(wanted);
    }
    Err(Error::Numerical(format!(
        "rotor subspace iteration did not converge in {} iterations (alpha = {}, grid = {n})",
        options.max_iterations,
        to_f64(alpha)
    )))
}

/// Lowest rotor energies (J) of a ring, boundary condition set by its statistics.
pub fn rotor_oracle<T: Real>(ring: &RingConfig<T>, options: &RotorOptions) -> Result<Vec<T>> {
    let c = ring.characterize();
    let sector = RotorSector::for_ladder(Ladder::of(ring));
    Ok(rotor_levels_reduced(c.alpha, sector, options)?
        .into_iter()
        .map(|e| e * c.e_star)
        .collect())
}
