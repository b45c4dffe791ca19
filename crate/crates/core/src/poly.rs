//! Dense univariate polynomials with complex coefficients.
//!
//! Coefficients are stored leading-first: `coeffs[0]` multiplies `z^n` and
//! `coeffs[n]` is the constant term.

use std::ops::Deref;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::Cdd;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "crate::serde_complex::vec")]
    coeffs: Vec<Complex64>,
}

/// Monic-normalized coefficients `(C_1/C_0, ..., C_n/C_0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector(pub Vec<Complex64>);

impl Deref for CoeffVector {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl Polynomial {
    /// Builds a polynomial from leading-first coefficients.
    ///
    /// Requires degree at least 2, a nonzero leading coefficient and finite
    /// entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if coeffs.len() < 3 {
            return Err(Error::DegreeTooSmall(coeffs.len().saturating_sub(1)));
        }
        if coeffs[0] == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroLeading);
        }
        Ok(Polynomial { coeffs })
    }

    /// Real coefficients, leading-first.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Expands `leading * prod (z - roots[i])`. Repeated roots are allowed.
    pub fn from_roots(roots: &[Complex64], leading: Complex64) -> Result<Self> {
        if leading == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroLeading);
        }
        if roots.len() < 2 {
            return Err(Error::DegreeTooSmall(roots.len()));
        }
        let mut coeffs = expand_monic(roots);
        for c in coeffs.iter_mut() {
            *c *= leading;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Horner evaluation.
    /// Horner evaluation carried in double-double and rounded once.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_dd(z).to_c64()
    }

    /// `(f(z), f'(z), f''(z))` by a single synthetic-division pass.
    ///
    /// The first component is bitwise identical to [`Polynomial::eval`].
    pub fn eval_derivs(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let (f, d1, d2) = self.eval_derivs_dd(z);
        (f.to_c64(), d1.to_c64(), d2.scale(2.0).to_c64())
    }

    pub(crate) fn eval_dd(&self, z: Complex64) -> Cdd {
        let z = Cdd::from(z);
        self.coeffs[1..].iter().fold(Cdd::from(self.coeffs[0]), |acc, &c| acc * z + Cdd::from(c))
    }

    /// `(f, f', f''/2)` in double-double.
    pub(crate) fn eval_derivs_dd(&self, z: Complex64) -> (Cdd, Cdd, Cdd) {
        let z = Cdd::from(z);
        let mut acc = Cdd::from(self.coeffs[0]);
        let mut d1 = Cdd::default();
        let mut d2 = Cdd::default();
        for &c in &self.coeffs[1..] {
            d2 = d2 * z + d1;
            d1 = d1 * z + acc;
            acc = acc * z + Cdd::from(c);
        }
        (acc, d1, d2)
    }

    pub fn coeff_vector(&self) -> CoeffVector {
        let lead = self.coeffs[0];
        CoeffVector(self.coeffs[1..].iter().map(|&c| c / lead).collect())
    }

    /// `max(1, max_i |C_i / C_0|)`, the magnitude used to scale absolute
    /// tolerances on Weierstrass corrections.
    pub fn monic_scale(&self) -> f64 {
        self.coeff_vector().iter().map(|c| c.norm()).fold(1.0, f64::max)
    }
}

/// Signed elementary symmetric polynomials of `x`: the non-leading
/// coefficients of `prod (z - x_i)`.
pub fn viete(x: &[Complex64]) -> CoeffVector {
    let mut coeffs = expand_monic(x);
    coeffs.remove(0);
    CoeffVector(coeffs)
}

fn expand_monic(roots: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = Vec::with_capacity(roots.len() + 1);
    coeffs.push(Complex64::new(1.0, 0.0));
    for &r in roots {
        // multiply by (z - r)
        coeffs.push(Complex64::new(0.0, 0.0));
        for k in (1..coeffs.len()).rev() {
            let prev = coeffs[k - 1];
            coeffs[k] -= r * prev;
        }
    }
    coeffs
}
