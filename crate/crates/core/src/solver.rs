//! Certified runs of the simultaneous iterations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certify::{certificate_from, disks_from, Certificate, Disk, GaugeBundle};
use crate::corrections::{check_degree, check_distinct, ApproxVector, ConeVector, Measurement, NormContext, PExponent};
use crate::error::{Error, Result};
use crate::methods::{step, MethodKind};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub method: MethodKind,
    pub p: PExponent,
    pub max_iter: usize,
    /// Stop once `max_i |W_i| <= w_tol * Polynomial::monic_scale()`.
    pub w_tol: f64,
    /// Refuse to iterate unless the starting vector is certified.
    pub require_certificate: bool,
}

impl SolveConfig {
    pub fn new(method: MethodKind, p: PExponent) -> Self {
        SolveConfig { method, p, max_iter: 100, w_tol: 1e-13, require_certificate: true }
    }
}

/// Iterates `x^(k)` with `|W_f(x^(k))|` and `E_f(x^(k))`, index-aligned.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub iterates: Vec<ApproxVector>,
    pub w_norms: Vec<ConeVector>,
    pub e_values: Vec<f64>,
}

impl IterationTrace {
    fn push(&mut self, x: ApproxVector, m: &Measurement) {
        self.iterates.push(x);
        self.w_norms.push(m.w_norm());
        self.e_values.push(m.e);
    }

    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub trace: IterationTrace,
    /// `None` for the Weierstrass iteration, which has no gauge bundle.
    pub certificate: Option<Certificate>,
    pub final_iterate: ApproxVector,
    /// Inclusion disks at the final iterate; empty when it is not certified.
    pub disks: Vec<Disk>,
    pub disks_disjoint: bool,
    pub converged: bool,
    pub order_estimate: Option<f64>,
}

impl SolveResult {
    /// Number of steps taken.
    pub fn iterations(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}

pub fn solve(f: &Polynomial, x0: &ApproxVector, cfg: &SolveConfig) -> Result<SolveResult> {
    if cfg.max_iter < 1 {
        return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
    }
    if !(cfg.w_tol > 0.0 && cfg.w_tol.is_finite()) {
        return Err(Error::InvalidConfig(format!("w_tol must be positive and finite, got {}", cfg.w_tol)));
    }
    check_degree(f, x0)?;
    check_distinct(x0)?;
    let ctx = NormContext::new(f.degree(), cfg.p)?;
    let bundle = match cfg.method {
        MethodKind::Weierstrass if !cfg.require_certificate => None,
        m => Some(GaugeBundle::new(m, ctx)?),
    };
    let threshold = cfg.w_tol * f.monic_scale();

    let mut m = Measurement::take(f, x0, &ctx)?;
    let certificate = bundle.as_ref().map(|b| certificate_from(&m, b));
    let mut trace = IterationTrace::default();
    let mut x = x0.clone();
    trace.push(x.clone(), &m);

    let issued = certificate.as_ref().is_some_and(|c| c.issued);
    let mut converged = max_abs(&m.w) <= threshold;
    if !(cfg.require_certificate && !issued) {
        while !converged && trace.len() <= cfg.max_iter {
            x = step(cfg.method, f, &x)?.image;
            m = Measurement::take(f, &x, &ctx)?;
            trace.push(x.clone(), &m);
            converged = max_abs(&m.w) <= threshold;
        }
    }

    let strict = certificate.as_ref().is_some_and(|c| c.strict);
    let (disks, disks_disjoint) = match &bundle {
        Some(b) if issued => disks_from(&x, &m, b, strict).unwrap_or_default(),
        _ => (Vec::new(), false),
    };
    let order_estimate = estimate_order(&trace);
    Ok(SolveResult { trace, certificate, final_iterate: x, disks, disks_disjoint, converged, order_estimate })
}

fn max_abs(w: &[Complex64]) -> f64 {
    w.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `n` points on a circle around the centroid of the zeros,
/// `-C_1/(n C_0)`, with radius `1 + max_i |C_i/C_0|^(1/i)`, starting at
/// angle 0.4.
pub fn default_init(f: &Polynomial) -> ApproxVector {
    init_on_circle(f, 0.4)
}

/// As [`default_init`] with an explicit starting angle.
pub fn init_on_circle(f: &Polynomial, angle: f64) -> ApproxVector {
    let n = f.degree();
    let cv = f.coeff_vector();
    let center = -cv[0] / n as f64;
    let radius = 1.0
        + cv.iter()
            .enumerate()
            .map(|(i, c)| c.norm().powf(1.0 / (i + 1) as f64))
            .fold(0.0, f64::max);
    let step = std::f64::consts::TAU / n as f64;
    ApproxVector((0..n).map(|k| center + Complex64::from_polar(radius, angle + step * k as f64)).collect())
}

/// [`init_on_circle`] with a starting angle drawn uniformly from
/// `[0, 2 pi / n)` by a ChaCha8 generator seeded with `seed`.
pub fn seeded_init(f: &Polynomial, seed: u64) -> ApproxVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angle = rng.gen_range(0.0..std::f64::consts::TAU / f.degree() as f64);
    init_on_circle(f, angle)
}

/// Median of `ln(e_{k+1}/e_k) / ln(e_k/e_{k-1})` over consecutive triples
/// of `e_k = max_i |W_i(x^(k))|` lying in `(1e-11, 1e-2)`; `None` with fewer
/// than two usable triples.
pub fn estimate_order(trace: &IterationTrace) -> Option<f64> {
    let e: Vec<f64> = trace.w_norms.iter().map(|w| w.max()).collect();
    let usable = |v: f64| v > 1e-11 && v < 1e-2;
    let mut ratios: Vec<f64> = e
        .windows(3)
        .filter(|t| t.iter().all(|&v| usable(v)))
        .map(|t| (t[2] / t[1]).ln() / (t[1] / t[0]).ln())
        .filter(|r| r.is_finite())
        .collect();
    if ratios.len() < 2 {
        return None;
    }
    ratios.sort_by(f64::total_cmp);
    let mid = ratios.len() / 2;
    Some(if ratios.len() % 2 == 0 { 0.5 * (ratios[mid - 1] + ratios[mid]) } else { ratios[mid] })
}
