#![allow(dead_code)]

pub mod wide;

use certiroot::oracle::known_instance;
use certiroot::{
    corollary_threshold, e_measure, norm_context, separation, ApproxVector, Complex64, MethodKind, PExponent,
    Polynomial,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * std::f64::consts::TAU)
}

/// Monic degree-`n` polynomial with coefficients in the unit disk and `n`
/// points in the disk of radius `radius`, pairwise at least `sep` apart.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, radius: f64, sep: f64) -> (Polynomial, Vec<Complex64>) {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    coeffs.extend((0..n).map(|_| in_disk(rng, 1.0)));
    let f = Polynomial::new(coeffs).unwrap();
    loop {
        let x: Vec<Complex64> = (0..n).map(|_| in_disk(rng, radius)).collect();
        if separation(&x).iter().all(|&d| d >= sep) {
            return (f, x);
        }
    }
}

/// Distinct roots on the grid `(Z + iZ)/8` inside `|re|, |im| <= 2`, at
/// least 0.25 apart. Their monic expansion is exact in binary64 for
/// `n <= 8`, so they are the exact zeros of the stored polynomial.
pub fn grid_roots(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let mut roots: Vec<Complex64> = Vec::with_capacity(n);
    while roots.len() < n {
        let z = Complex64::new(rng.gen_range(-16..=16) as f64 / 8.0, rng.gen_range(-16..=16) as f64 / 8.0);
        if roots.iter().all(|r| (r - z).norm() >= 0.25) {
            roots.push(z);
        }
    }
    roots
}

pub struct Certified {
    pub f: Polynomial,
    pub roots: Vec<Complex64>,
    pub x0: ApproxVector,
    pub method: MethodKind,
    pub p: PExponent,
    pub e0: f64,
}

/// A known-root instance whose start lies strictly below the corollary
/// threshold of `method` at `p`: the perturbation starts at a third of the
/// root separation and is halved until the threshold is met.
pub fn certified_case(seed: u64, n: usize, method: MethodKind, p: PExponent) -> Certified {
    let mut r = rng(seed);
    let roots = grid_roots(&mut r, n);
    let ctx = norm_context(n, p).unwrap();
    let threshold = corollary_threshold(method, &ctx).unwrap();
    let mut delta = separation(&roots).iter().copied().fold(f64::INFINITY, f64::min) / 3.0;
    loop {
        let (f, x0) = known_instance(&roots, delta, seed).unwrap();
        let e0 = e_measure(&f, &x0, &ctx).unwrap();
        if e0 < threshold {
            return Certified { f, roots, x0, method, p, e0 };
        }
        delta *= 0.5;
    }
}
