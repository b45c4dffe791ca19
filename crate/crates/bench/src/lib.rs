//! Fixed benchmark instances.

use std::f64::consts::TAU;

use certiroot::{ApproxVector, Complex64, Polynomial};

/// `z^n - 1` and a start near its zeros, each moved by `perturbation` in a
/// direction that turns with `k`. Expanding a product of linear factors
/// instead would bury the start in coefficient rounding for large `n`.
pub fn instance(n: usize, perturbation: f64) -> (Polynomial, ApproxVector) {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    coeffs[n] = Complex64::new(-1.0, 0.0);
    let x = (0..n)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64) + Complex64::from_polar(perturbation, k as f64))
        .collect();
    (Polynomial::new(coeffs).expect("monic"), ApproxVector(x))
}

/// Perturbation small enough that both certified methods accept the start.
pub fn certified_perturbation(n: usize) -> f64 {
    0.02 / (n * n) as f64
}
