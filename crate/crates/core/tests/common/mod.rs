//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// f(Δ + δ) − f(Δ) for f(Δ) = 1/sin(Δ/2), Δ ∈ (0, 2π), written without
/// subtractive cancellation: sin(a) − sin(b) = 2 cos((a+b)/2) sin((a−b)/2).
fn pair_change(delta: f64, step: f64) -> f64 {
    if step == 0.0 {
        return 0.0;
    }
    let (a, b) = (delta / 2.0, (delta + step) / 2.0);
    2.0 * ((a + b) / 2.0).cos() * ((a - b) / 2.0).sin() / (a.sin() * b.sin())
}

/// u(θ + δ) − u(θ) for the displacement vector δ, summed over pairs.
pub fn energy_change(theta: &[f64], displacement: &[f64]) -> f64 {
    let n = theta.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let delta = (theta[j] - theta[i]).rem_euclid(2.0 * PI);
            total += pair_change(delta, displacement[j] - displacement[i]);
        }
    }
    total
}

pub fn equilibrium(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

fn displaced(n: usize, moves: &[(usize, f64)]) -> Vec<f64> {
    let mut d = vec![0.0; n];
    for &(i, s) in moves {
        d[i] += s;
    }
    d
}

/// Central finite-difference gradient of u.
pub fn fd_gradient(theta: &[f64], h: f64) -> Vec<f64> {
    let n = theta.len();
    (0..n)
        .map(|i| {
            (energy_change(theta, &displaced(n, &[(i, h)])) - energy_change(theta, &displaced(n, &[(i, -h)])))
                / (2.0 * h)
        })
        .collect()
}

/// Central finite-difference Hessian of u, row-major.
pub fn fd_hessian(theta: &[f64], h: f64) -> Vec<Vec<f64>> {
    let n = theta.len();
    let du = |moves: &[(usize, f64)]| energy_change(theta, &displaced(n, moves));
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        out[i][i] = (du(&[(i, h)]) + du(&[(i, -h)])) / (h * h);
        for j in (i + 1)..n {
            let v = (du(&[(i, h), (j, h)]) - du(&[(i, h), (j, -h)]) - du(&[(i, -h), (j, h)]) + du(&[(i, -h), (j, -h)]))
                / (4.0 * h * h);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    out
}

/// Plain wide-window Boltzmann sums: (ω̄/ω*, Z).
pub fn brute_thermal(alpha: f64, tau: f64, half_integer: bool, halfwidth: i64) -> (f64, f64) {
    let offset = if half_integer { 0.5 } else { 0.0 };
    let centre = alpha.round() as i64;
    let (mut z, mut s) = (0.0, 0.0);
    for k in (centre - halfwidth)..=(centre + halfwidth) {
        let x = k as f64 + offset - alpha;
        let w = (-x * x / tau).exp();
        z += w;
        s += x * w;
    }
    (s / z, z)
}

/// Brute-force ground level over a wide ladder window: sorted (n − α) values
/// of every minimizer within 1e-12.
pub fn brute_ground(alpha: f64, half_integer: bool) -> Vec<f64> {
    let offset = if half_integer { 0.5 } else { 0.0 };
    let xs: Vec<f64> = (-50..=50).map(|k| k as f64 + offset + alpha.round() - alpha).collect();
    let emin = xs.iter().map(|x| x * x).fold(f64::INFINITY, f64::min);
    xs.into_iter().filter(|x| x * x - emin < 1e-12).collect()
}

/// Smallest q ≤ q_max with |x − p/q| ≤ tol, scanning every denominator.
pub fn brute_rational(x: f64, q_max: u64, tol: f64) -> Option<(i64, u64)> {
    (1..=q_max).find_map(|q| {
        let p = (x * q as f64).round() as i64;
        ((x - p as f64 / q as f64).abs() <= tol).then_some((p, q))
    })
}
