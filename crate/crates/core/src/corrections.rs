//! Measurements on an approximation vector: separations, Weierstrass
//! corrections, the initial-condition value `E_f(x) = ||W_f(x) / d(x)||_p`,
//! and the p-norm machinery behind it.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Exponent `1 <= p <= inf` of a p-norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::BadExponent(p));
        }
        if p.is_infinite() {
            Ok(PExponent::Infinity)
        } else {
            Ok(PExponent::Finite(p))
        }
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> PExponent {
        match self {
            PExponent::Infinity => PExponent::Finite(1.0),
            PExponent::Finite(p) if p == 1.0 => PExponent::Infinity,
            PExponent::Finite(p) => PExponent::Finite(p / (p - 1.0)),
        }
    }

    /// `1/p`, with `1/inf = 0`.
    pub fn recip(self) -> f64 {
        match self {
            PExponent::Infinity => 0.0,
            PExponent::Finite(p) => 1.0 / p,
        }
    }

    /// p-norm of a vector of nonnegative entries.
    ///
    /// Finite `p > 1` factors out the largest entry first so that large
    /// exponents neither overflow nor flush to zero.
    pub fn norm(self, v: &[f64]) -> f64 {
        match self {
            PExponent::Infinity => v.iter().copied().fold(0.0, f64::max),
            PExponent::Finite(p) if p == 1.0 => v.iter().sum(),
            PExponent::Finite(p) => {
                let m = v.iter().copied().fold(0.0, f64::max);
                if m == 0.0 || !m.is_finite() {
                    return m;
                }
                let s: f64 = v.iter().map(|&x| (x / m).powf(p)).sum();
                m * s.powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Infinity => f.write_str("inf"),
            PExponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(PExponent::Infinity);
        }
        let p: f64 = s.parse().map_err(|_| Error::BadExponent(f64::NAN))?;
        PExponent::new(p)
    }
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PExponent::Infinity => s.serialize_str("inf"),
            PExponent::Finite(p) => s.serialize_f64(*p),
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let parsed = match Raw::deserialize(d)? {
            Raw::Num(p) => PExponent::new(p),
            Raw::Str(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Dimension-dependent constants of the p-norm: `a = (n-1)^(1/q)` and
/// `b = 2^(1/q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormContext {
    pub n: usize,
    pub p: PExponent,
    pub q: PExponent,
    pub a: f64,
    pub b: f64,
}

impl NormContext {
    pub fn new(n: usize, p: PExponent) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        if let PExponent::Finite(v) = p {
            PExponent::new(v)?;
        }
        let q = p.conjugate();
        // endpoint values are pinned rather than obtained through powf
        let (a, b) = match q {
            PExponent::Infinity => (1.0, 1.0),
            PExponent::Finite(qv) if qv == 1.0 => ((n - 1) as f64, 2.0),
            PExponent::Finite(_) => {
                let e = q.recip();
                (((n - 1) as f64).powf(e), 2f64.powf(e))
            }
        };
        Ok(NormContext { n, p, q, a, b })
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        self.p.norm(v)
    }
}

pub fn norm_context(n: usize, p: PExponent) -> Result<NormContext> {
    NormContext::new(n, p)
}

/// Approximations `x_1, ..., x_n` to the zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ApproxVector(#[serde(with = "crate::serde_complex::vec")] pub Vec<Complex64>);

impl Deref for ApproxVector {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl From<Vec<Complex64>> for ApproxVector {
    fn from(v: Vec<Complex64>) -> Self {
        ApproxVector(v)
    }
}

impl ApproxVector {
    /// Fails with the first pair of exactly coinciding components.
    pub fn check_distinct(&self) -> Result<()> {
        check_distinct(self)
    }
}

/// Nonnegative vector compared coordinatewise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeVector(pub Vec<f64>);

impl Deref for ConeVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl ConeVector {
    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, s: f64) -> ConeVector {
        ConeVector(self.0.iter().map(|&v| s * v).collect())
    }
}

pub(crate) fn check_distinct(x: &[Complex64]) -> Result<()> {
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] == x[j] {
                return Err(Error::NotDistinct(i, j));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_degree(f: &Polynomial, x: &[Complex64]) -> Result<()> {
    if x.len() != f.degree() {
        return Err(Error::DegreeMismatch { expected: f.degree(), found: x.len() });
    }
    Ok(())
}

/// `d_i(x) = min_{j != i} |x_i - x_j|`.
pub fn separation(x: &[Complex64]) -> ConeVector {
    let d = (0..x.len())
        .map(|i| {
            x.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| (x[i] - xj).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    ConeVector(d)
}

/// `prod_{j != i} (x_i - x_j)`.
pub(crate) fn node_product(x: &[Complex64], i: usize) -> Cdd {
    x.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &xj)| Cdd::from(x[i]) - Cdd::from(xj))
        .product()
}

/// `W_i(x) = f(x_i) / (C_0 prod_{j != i} (x_i - x_j))`.
pub fn weierstrass_correction(f: &Polynomial, x: &[Complex64]) -> Result<Vec<Complex64>> {
    check_degree(f, x)?;
    check_distinct(x)?;
    Ok(corrections_unchecked(f, x))
}

pub(crate) fn corrections_unchecked(f: &Polynomial, x: &[Complex64]) -> Vec<Complex64> {
    corrections_dd(f, x).into_iter().map(Cdd::to_c64).collect()
}

pub(crate) fn corrections_dd(f: &Polynomial, x: &[Complex64]) -> Vec<Cdd> {
    let lead = Cdd::from(f.leading());
    (0..x.len()).map(|i| f.eval_dd(x[i]) / (lead * node_product(x, i))).collect()
}

/// `E_f(x) = || (|W_i(x)| / d_i(x))_i ||_p`.
pub fn e_measure(f: &Polynomial, x: &[Complex64], ctx: &NormContext) -> Result<f64> {
    Ok(Measurement::take(f, x, ctx)?.e)
}

/// `sum_{j != i} W_j / (at - x_j)`.
///
/// With `at = x_i` this is `sigma_i(x)`; with `at` the image of `x_i` under a
/// step it is the hatted sum.
pub fn sigma_sum(w: &[Complex64], x: &[Complex64], i: usize, at: Complex64) -> Result<Complex64> {
    let mut s = Cdd::default();
    for (j, (&wj, &xj)) in w.iter().zip(x).enumerate() {
        if j == i {
            continue;
        }
        if at == xj {
            return Err(Error::DivByZero(j));
        }
        s = s + Cdd::from(wj) / (Cdd::from(at) - Cdd::from(xj));
    }
    Ok(s.to_c64())
}

/// Componentwise modulus.
pub fn cone_norm(v: &[Complex64]) -> ConeVector {
    ConeVector(v.iter().map(|z| z.norm()).collect())
}

/// Corrections, separations and `E_f` at one vector, computed together.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub w: Vec<Complex64>,
    pub d: ConeVector,
    pub e: f64,
}

impl Measurement {
    pub fn take(f: &Polynomial, x: &[Complex64], ctx: &NormContext) -> Result<Self> {
        if ctx.n != x.len() {
            return Err(Error::DegreeMismatch { expected: ctx.n, found: x.len() });
        }
        let w = weierstrass_correction(f, x)?;
        let d = separation(x);
        let ratios: Vec<f64> = w.iter().zip(d.iter()).map(|(wi, di)| wi.norm() / di).collect();
        let e = ctx.norm(&ratios);
        Ok(Measurement { w, d, e })
    }

    pub fn w_norm(&self) -> ConeVector {
        cone_norm(&self.w)
    }
}
