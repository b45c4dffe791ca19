//! Independent reference machinery for tests: instances with known zeros,
//! root matching, and Newton's method on the Viète system with a
//! finite-difference Jacobian.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corrections::{check_distinct, ApproxVector};
use crate::error::{Error, Result};
use crate::poly::{viete, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct MatchedRoots {
    /// `permutation[i]` is the index in `truth` matched to `found[i]`.
    pub permutation: Vec<usize>,
    pub max_abs_error: f64,
}

/// Monic polynomial with the given zeros and a starting vector obtained by
/// moving each zero by at most `perturbation`, reproducibly from `seed`.
pub fn known_instance(roots: &[Complex64], perturbation: f64, seed: u64) -> Result<(Polynomial, ApproxVector)> {
    check_distinct(roots)?;
    let f = Polynomial::from_roots(roots, Complex64::new(1.0, 0.0))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let x: Vec<Complex64> = roots
            .iter()
            .map(|&r| {
                let radius = perturbation * rng.gen::<f64>().sqrt();
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                r + Complex64::from_polar(radius, angle)
            })
            .collect();
        if check_distinct(&x).is_ok() {
            return Ok((f, ApproxVector(x)));
        }
    }
}

/// One Newton step on `F(x) = V(x) - C_f`, with the Jacobian from central
/// differences of step `h` along the real and imaginary axes (averaged).
pub fn newton_viete_step(f: &Polynomial, x: &[Complex64], h: f64) -> Result<ApproxVector> {
    check_distinct(x)?;
    let n = x.len();
    if n != f.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), found: n });
    }
    let target = f.coeff_vector();
    let residual = |y: &[Complex64]| -> Vec<Complex64> {
        viete(y).iter().zip(target.iter()).map(|(v, c)| v - c).collect()
    };

    let mut jac = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 0..n {
        for dir in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[k] += dir;
            minus[k] -= dir;
            let (fp, fm) = (residual(&plus), residual(&minus));
            for row in 0..n {
                jac[row][k] += (fp[row] - fm[row]) / (dir * 2.0) * 0.5;
            }
        }
    }
    let delta = solve_linear(jac, residual(x))?;
    Ok(ApproxVector(x.iter().zip(&delta).map(|(xi, di)| xi - di).collect()))
}

/// Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = b.len();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        if a[pivot][col].norm() < 1e-12 * scale {
            return Err(Error::SingularJacobian);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= factor * v;
            }
            let v = b[col];
            b[row] -= factor * v;
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let tail: Complex64 = (row + 1..n).map(|k| a[row][k] * out[k]).sum();
        out[row] = (b[row] - tail) / a[row][row];
    }
    Ok(out)
}

/// Matching of `found` to `truth` minimizing the largest distance.
/// Exhaustive for `n <= 8`, greedy nearest-neighbor above.
pub fn match_roots(found: &[Complex64], truth: &[Complex64]) -> MatchedRoots {
    assert_eq!(found.len(), truth.len(), "match_roots needs equal lengths");
    if found.len() <= 8 {
        exhaustive_match(found, truth)
    } else {
        greedy_match(found, truth)
    }
}

fn max_error(found: &[Complex64], truth: &[Complex64], perm: &[usize]) -> f64 {
    perm.iter().enumerate().map(|(i, &j)| (found[i] - truth[j]).norm()).fold(0.0, f64::max)
}

fn exhaustive_match(found: &[Complex64], truth: &[Complex64]) -> MatchedRoots {
    let n = found.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = MatchedRoots { permutation: perm.clone(), max_abs_error: max_error(found, truth, &perm) };
    // Heap's algorithm
    let mut counters = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            let err = max_error(found, truth, &perm);
            if err < best.max_abs_error {
                best = MatchedRoots { permutation: perm.clone(), max_abs_error: err };
            }
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    best
}

fn greedy_match(found: &[Complex64], truth: &[Complex64]) -> MatchedRoots {
    let mut taken = vec![false; truth.len()];
    let permutation: Vec<usize> = found
        .iter()
        .map(|z| {
            let j = (0..truth.len())
                .filter(|&j| !taken[j])
                .min_by(|&a, &b| (z - truth[a]).norm().total_cmp(&(z - truth[b]).norm()))
                .unwrap();
            taken[j] = true;
            j
        })
        .collect();
    let max_abs_error = max_error(found, truth, &permutation);
    MatchedRoots { permutation, max_abs_error }
}
