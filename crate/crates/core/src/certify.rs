//! Convergence certificates for the Ehrlich and Dochev-Byrnev iterations.
//!
//! Both methods are controlled by a [`GaugeBundle`]: real functions
//! `gamma, psi, mu, beta, phi` of the scalar `E_f(x)` together with a domain
//! bound `tau`. A starting vector is certified when
//! `E_f(x0) < tau` and `phi(E_f(x0)) <= 1`; from then on every iterate stays
//! in a computable ball, the corrections contract with order three, and the
//! error bounds below hold componentwise.
//!
//! `beta` is quasi-homogeneous of degree 2 for both bundles (`beta(t)/t^2`
//! is nondecreasing), which gives the convergence order 3.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::corrections::{ConeVector, Measurement, NormContext, PExponent};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::methods::MethodKind;
use crate::poly::Polynomial;

/// Largest `k` used in `lambda^(3^k)`; larger `k` reuse this exponent, which
/// only loosens the (decreasing) bounds.
const MAX_POWER_STEP: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gauge {
    Ehrlich,
    DochevByrnev,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeBundle {
    pub method: MethodKind,
    pub ctx: NormContext,
    pub tau: f64,
    gauge: Gauge,
}

impl GaugeBundle {
    /// Quasi-homogeneity degree of `beta`.
    pub const DEGREE: u32 = 2;
    /// Convergence order `DEGREE + 1`.
    pub const ORDER: u32 = 3;

    pub fn new(method: MethodKind, ctx: NormContext) -> Result<Self> {
        let (a, b) = (ctx.a, ctx.b);
        let (gauge, tau) = match method {
            MethodKind::Ehrlich => (Gauge::Ehrlich, 1.0 / (a + b)),
            MethodKind::DochevByrnev | MethodKind::Tanabe => {
                let tau = (1.0 / a).min(2.0 / (b + (b * b + 4.0 * a * b).sqrt()));
                (Gauge::DochevByrnev, tau)
            }
            MethodKind::Weierstrass => {
                return Err(Error::Unsupported("no certificate for the Weierstrass iteration".into()))
            }
        };
        Ok(GaugeBundle { method, ctx, tau, gauge })
    }

    fn n1(&self) -> f64 {
        (self.ctx.n - 1) as f64
    }

    /// Step-size control: `|x_i - T_i(x)| <= gamma(E) |W_i(x)|`.
    pub fn gamma(&self, t: f64) -> f64 {
        let a = self.ctx.a;
        match self.gauge {
            Gauge::Ehrlich => 1.0 / (1.0 - a * t),
            Gauge::DochevByrnev => 1.0 + a * t,
        }
    }

    /// Separation shrinkage `1 - b t gamma(t)`.
    pub fn psi(&self, t: f64) -> f64 {
        self.one_minus(self.ctx.b, t)
    }

    /// `1 - t gamma(t)`.
    pub fn mu(&self, t: f64) -> f64 {
        self.one_minus(1.0, t)
    }

    /// `1 - c t gamma(t)` in double-double; both `psi` and `mu` vanish on
    /// `[0, tau]` and lose digits near their zeros in plain binary64.
    fn one_minus(&self, c: f64, t: f64) -> f64 {
        let (one, a, c, t) = (Dd::from(1.0), Dd::from(self.ctx.a), Dd::from(c), Dd::from(t));
        let v = match self.gauge {
            Gauge::Ehrlich => {
                let den = one - a * t;
                (den - c * t) / den
            }
            Gauge::DochevByrnev => one - c * t * (one + a * t),
        };
        v.to_f64()
    }

    /// Correction contraction: `|W_i(T(x))| <= beta(E) |W_i(x)|`.
    pub fn beta(&self, t: f64) -> f64 {
        self.beta_over_psi_pow(t, 0)
    }

    /// `beta / psi`.
    pub fn phi(&self, t: f64) -> f64 {
        self.beta_over_psi_pow(t, 1)
    }

    /// `beta(t) / psi(t)^k`, written through `psi` and `mu`:
    ///
    /// Ehrlich: `beta = a t^2 / ((1-at)^2 mu) (1 + at / ((n-1)(1-at) psi))^(n-1)`,
    /// Dochev-Byrnev: `beta = a t^2 gamma (1+a+at) / ((1-at) mu) (1 + at gamma / ((n-1) psi))^(n-1)`.
    fn beta_over_psi_pow(&self, t: f64, k: i32) -> f64 {
        let (a, n1) = (self.ctx.a, self.n1());
        let (psi, mu) = (self.psi(t), self.mu(t));
        let (head, inner) = match self.gauge {
            Gauge::Ehrlich => {
                let g = 1.0 / (1.0 - a * t);
                (a * t * t * g * g / mu, a * t * g)
            }
            Gauge::DochevByrnev => {
                let g = 1.0 + a * t;
                (a * t * t * g * (1.0 + a + a * t) / ((1.0 - a * t) * mu), a * t * g)
            }
        };
        head / psi.powi(k) * (1.0 + inner / (n1 * psi)).powi(n1 as i32)
    }

    /// `gamma(t) / (1 - beta(t))`, the factor turning `|W_i|` into an error radius.
    pub fn radius_factor(&self, t: f64) -> f64 {
        self.gamma(t) / (1.0 - self.beta(t))
    }

    /// `t < tau` and `phi(t) <= 1`.
    pub fn admits(&self, t: f64) -> bool {
        t < self.tau && self.phi(t) <= 1.0
    }
}

pub fn gauge_bundle(method: MethodKind, ctx: NormContext) -> Result<GaugeBundle> {
    GaugeBundle::new(method, ctx)
}

/// Outcome of checking the initial conditions at a starting vector.
///
/// `phi0`, `lambda` and `theta` are present whenever `E0 < tau`; `rho` and
/// `order` only on issued (respectively strict) certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub method: MethodKind,
    pub ctx: NormContext,
    #[serde(rename = "E0")]
    pub e0: f64,
    pub tau: f64,
    pub phi0: Option<f64>,
    pub strict: bool,
    pub lambda: Option<f64>,
    pub theta: Option<f64>,
    pub rho: Option<ConeVector>,
    pub order: Option<u32>,
    pub issued: bool,
}

impl Certificate {
    pub fn bundle(&self) -> Result<GaugeBundle> {
        GaugeBundle::new(self.method, self.ctx)
    }

    /// `(bundle, lambda, theta)` of an issued certificate.
    fn constants(&self) -> Result<(GaugeBundle, f64, f64)> {
        match (self.issued, self.lambda, self.theta) {
            (true, Some(l), Some(t)) => Ok((self.bundle()?, l, t)),
            _ => Err(Error::NotCertified),
        }
    }
}

pub fn certify_initial(f: &Polynomial, x0: &[Complex64], bundle: &GaugeBundle) -> Result<Certificate> {
    let m = Measurement::take(f, x0, &bundle.ctx)?;
    Ok(certificate_from(&m, bundle))
}

pub(crate) fn certificate_from(m: &Measurement, bundle: &GaugeBundle) -> Certificate {
    let e0 = m.e;
    let mut cert = Certificate {
        method: bundle.method,
        ctx: bundle.ctx,
        e0,
        tau: bundle.tau,
        phi0: None,
        strict: false,
        lambda: None,
        theta: None,
        rho: None,
        order: None,
        issued: false,
    };
    if !(e0 < bundle.tau) {
        return cert;
    }
    let phi0 = bundle.phi(e0);
    cert.phi0 = Some(phi0);
    cert.lambda = Some(phi0);
    cert.theta = Some(bundle.psi(e0));
    if phi0 <= 1.0 {
        cert.issued = true;
        cert.strict = phi0 < 1.0;
        cert.order = cert.strict.then_some(GaugeBundle::ORDER);
        cert.rho = Some(m.w_norm().scaled(bundle.radius_factor(e0)));
    }
    cert
}

/// `base^exp` through logarithms; `0^0 = 1`, underflow goes to 0.
fn pow_log(base: f64, exp: f64) -> f64 {
    if exp == 0.0 {
        1.0
    } else if base == 0.0 {
        0.0
    } else {
        (exp * base.ln()).exp()
    }
}

fn power_exponents(k: u32) -> (u32, f64, f64) {
    let k = k.min(MAX_POWER_STEP);
    let r_k = 3f64.powi(k as i32);
    (k, r_k, (r_k - 1.0) / 2.0)
}

/// A priori bound on `|x_i^(k) - xi_i|`:
/// `A_k theta^k lambda^((3^k-1)/2) / (1 - theta lambda^(3^k)) |W_i(x0)|`
/// with `A_k = gamma(E0 lambda^((3^k-1)/2))`.
pub fn a_priori_bound(cert: &Certificate, w0_norm: &[f64], k: u32) -> Result<ConeVector> {
    let (bundle, lambda, theta) = cert.constants()?;
    let (k, r_k, s_k) = power_exponents(k);
    let lam_s = pow_log(lambda, s_k);
    let lam_r = pow_log(lambda, r_k);
    let factor = bundle.gamma(cert.e0 * lam_s) * theta.powi(k as i32) * lam_s / (1.0 - theta * lam_r);
    Ok(ConeVector(w0_norm.iter().map(|&w| factor * w).collect()))
}

/// First a posteriori bound `gamma(E_k)/(1 - beta(E_k)) |W_i(x^(k))|`.
pub fn a_posteriori_bound_1(f: &Polynomial, xk: &[Complex64], bundle: &GaugeBundle) -> Result<ConeVector> {
    let m = Measurement::take(f, xk, &bundle.ctx)?;
    posteriori_1(&m, bundle)
}

pub(crate) fn posteriori_1(m: &Measurement, bundle: &GaugeBundle) -> Result<ConeVector> {
    if !bundle.admits(m.e) {
        return Err(Error::NotCertified);
    }
    Ok(m.w_norm().scaled(bundle.radius_factor(m.e)))
}

/// Second a posteriori bound on `|x_i^(k+1) - xi_i|`:
/// `theta_k lambda_k / (1 - theta_k lambda_k^3) gamma(E_{k+1}) |W_i(x^(k))|`.
pub fn a_posteriori_bound_2(
    f: &Polynomial,
    xk: &[Complex64],
    xk1: &[Complex64],
    bundle: &GaugeBundle,
) -> Result<ConeVector> {
    let mk = Measurement::take(f, xk, &bundle.ctx)?;
    let mk1 = Measurement::take(f, xk1, &bundle.ctx)?;
    posteriori_2(&mk, &mk1, bundle)
}

pub(crate) fn posteriori_2(mk: &Measurement, mk1: &Measurement, bundle: &GaugeBundle) -> Result<ConeVector> {
    if !bundle.admits(mk.e) || !(mk1.e < bundle.tau) {
        return Err(Error::NotCertified);
    }
    let lambda = bundle.phi(mk.e);
    let theta = bundle.psi(mk.e);
    let factor = theta * lambda / (1.0 - theta * lambda.powi(3)) * bundle.gamma(mk1.e);
    Ok(mk.w_norm().scaled(factor))
}

/// `theta lambda^(3^k) |W_i(x^(k))|`, a bound on `|W_i(x^(k+1))|`.
pub fn w_contraction_bound(cert: &Certificate, wk_norm: &[f64], k: u32) -> Result<ConeVector> {
    let (_, lambda, theta) = cert.constants()?;
    let (_, r_k, _) = power_exponents(k);
    let factor = theta * pow_log(lambda, r_k);
    Ok(ConeVector(wk_norm.iter().map(|&w| factor * w).collect()))
}

/// Closed disk `|z - center| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    #[serde(with = "crate::serde_complex")]
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

/// Inclusion disks centered at `xk` with radii from the first a posteriori
/// bound.
///
/// The flag is true when `phi(E_f(xk)) < 1`, so that `xk` is itself a strict
/// starting point and the disks are guaranteed disjoint with one zero each,
/// and the disks are also pairwise disjoint in floating point.
pub fn inclusion_disks(f: &Polynomial, xk: &[Complex64], bundle: &GaugeBundle) -> Result<(Vec<Disk>, bool)> {
    let m = Measurement::take(f, xk, &bundle.ctx)?;
    disks_from(xk, &m, bundle, bundle.phi(m.e) < 1.0)
}

/// `strict` is the strictness of the certificate the run started from.
pub(crate) fn disks_from(
    xk: &[Complex64],
    m: &Measurement,
    bundle: &GaugeBundle,
    strict: bool,
) -> Result<(Vec<Disk>, bool)> {
    let radii = posteriori_1(m, bundle)?;
    let disks: Vec<Disk> = xk.iter().zip(radii.iter()).map(|(&center, &radius)| Disk { center, radius }).collect();
    let disjoint = strict && pairwise_disjoint(&disks);
    Ok((disks, disjoint))
}

fn pairwise_disjoint(disks: &[Disk]) -> bool {
    disks.iter().enumerate().all(|(i, di)| {
        disks[i + 1..].iter().all(|dj| (di.center - dj.center).norm() > di.radius + dj.radius)
    })
}

/// Ready-made sufficient bound on `E_f(x0)` for a certificate.
///
/// Ehrlich, any `p`: `1/(2a + 2)` (strict inequality needed when `n = 2`,
/// `p = inf`, see [`threshold_is_strict`]). Dochev-Byrnev: `4/(9n)` for
/// `p = inf` and [`solve_r`] for `p = 1`; other exponents are unsupported.
pub fn corollary_threshold(method: MethodKind, ctx: &NormContext) -> Result<f64> {
    match (method, ctx.p) {
        (MethodKind::Ehrlich, _) => Ok(1.0 / (2.0 * ctx.a + 2.0)),
        (MethodKind::DochevByrnev | MethodKind::Tanabe, PExponent::Infinity) => Ok(4.0 / (9.0 * ctx.n as f64)),
        (MethodKind::DochevByrnev | MethodKind::Tanabe, PExponent::Finite(p)) if p == 1.0 => Ok(solve_r()),
        (m, p) => Err(Error::Unsupported(format!("no threshold for {m} with p = {p}"))),
    }
}

/// Whether `E_f(x0)` must stay strictly below [`corollary_threshold`].
pub fn threshold_is_strict(method: MethodKind, ctx: &NormContext) -> bool {
    method == MethodKind::Ehrlich && ctx.n == 2 && ctx.p == PExponent::Infinity
}

/// `t^2 (1+t)(2+t) / ((1-t)(1-t-t^2)^2) * exp((t+t^2)/(1-t-t^2))`, a
/// dimension-free majorant of the Dochev-Byrnev `phi` at `p = 1`.
pub fn r_equation_lhs(t: f64) -> f64 {
    let s = 1.0 - t - t * t;
    t * t * (1.0 + t) * (2.0 + t) / ((1.0 - t) * s * s) * ((t + t * t) / s).exp()
}

/// Root of `r_equation_lhs(t) = 1` on `(0, (sqrt 5 - 1)/2)`, by bisection.
pub fn solve_r() -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 0.618_f64);
    debug_assert!(r_equation_lhs(lo) < 1.0 && r_equation_lhs(hi) > 1.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if r_equation_lhs(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
