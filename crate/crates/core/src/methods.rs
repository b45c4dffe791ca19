//! Single steps of the simultaneous iterations.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::corrections::{check_degree, check_distinct, corrections_dd, node_product, ApproxVector};
use crate::dd::Cdd;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Weierstrass,
    Ehrlich,
    DochevByrnev,
    /// Prešić-Tanabe; produces the same iterates as [`MethodKind::DochevByrnev`].
    Tanabe,
}

impl MethodKind {
    pub const ALL: [MethodKind; 4] =
        [MethodKind::Weierstrass, MethodKind::Ehrlich, MethodKind::DochevByrnev, MethodKind::Tanabe];

    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Weierstrass => "weierstrass",
            MethodKind::Ehrlich => "ehrlich",
            MethodKind::DochevByrnev => "dochev-byrnev",
            MethodKind::Tanabe => "tanabe",
        }
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        MethodKind::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::Unsupported(format!("unknown method '{s}'")))
    }
}

/// Image of one step together with the corrections `W_f(x)` it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub image: ApproxVector,
    pub corrections: Vec<Complex64>,
}

/// Relative size below which an Ehrlich denominator counts as vanishing.
const DOMAIN_EPS: f64 = 1e-14;

// Steps are evaluated in double-double and rounded once: the sums behind
// `1 + sigma_i` and `f' - f sum 1/(x_i - x_j)` can cancel by several orders
// of magnitude near the boundary of the domain.

fn prepare(f: &Polynomial, x: &[Complex64]) -> Result<Vec<Cdd>> {
    check_degree(f, x)?;
    check_distinct(x)?;
    Ok(corrections_dd(f, x))
}

fn rounded(w: &[Cdd]) -> Vec<Complex64> {
    w.iter().map(|z| z.to_c64()).collect()
}

/// `sum_{j != i} W_j / (x_i - x_j)`
fn sigma(w: &[Cdd], x: &[Complex64], i: usize) -> Cdd {
    let xi = Cdd::from(x[i]);
    (0..x.len()).filter(|&j| j != i).map(|j| w[j] / (xi - Cdd::from(x[j]))).sum()
}

/// `sum_{j != i} 1 / (x_i - x_j)`
fn inverse_sum(x: &[Complex64], i: usize) -> Cdd {
    let xi = Cdd::from(x[i]);
    (0..x.len()).filter(|&j| j != i).map(|j| (xi - Cdd::from(x[j])).inv()).sum()
}

fn vanishes(den: Cdd, xi: Complex64) -> bool {
    !(den.norm() >= DOMAIN_EPS * (1.0 + xi.norm()))
}

/// `x_i - W_i(x)`.
pub fn weierstrass_step(f: &Polynomial, x: &[Complex64]) -> Result<StepResult> {
    let w = prepare(f, x)?;
    let image = x.iter().zip(&w).map(|(&xi, &wi)| (Cdd::from(xi) - wi).to_c64()).collect();
    Ok(StepResult { image: ApproxVector(image), corrections: rounded(&w) })
}

/// Börsch-Supan form of the Ehrlich step: `x_i - W_i / (1 + sigma_i)`.
pub fn ehrlich_step_bs(f: &Polynomial, x: &[Complex64]) -> Result<StepResult> {
    let w = prepare(f, x)?;
    let mut image = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let den = Cdd::ONE + sigma(&w, x, i);
        if vanishes(den, x[i]) {
            return Err(Error::OutsideDomain(i));
        }
        image.push((Cdd::from(x[i]) - w[i] / den).to_c64());
    }
    Ok(StepResult { image: ApproxVector(image), corrections: rounded(&w) })
}

/// Ehrlich's original form: `x_i - f(x_i) / (f'(x_i) - f(x_i) sum_{j != i} 1/(x_i - x_j))`.
pub fn ehrlich_step_newton(f: &Polynomial, x: &[Complex64]) -> Result<StepResult> {
    let w = prepare(f, x)?;
    let mut image = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let (fx, dfx, _) = f.eval_derivs_dd(x[i]);
        let den = dfx - fx * inverse_sum(x, i);
        if vanishes(den, x[i]) {
            return Err(Error::OutsideDomain(i));
        }
        image.push((Cdd::from(x[i]) - fx / den).to_c64());
    }
    Ok(StepResult { image: ApproxVector(image), corrections: rounded(&w) })
}

/// Dochev-Byrnev step through `g(z) = C_0 prod (z - x_j)`:
///
/// `x_i - (f/g')(2 - f'/g' + (f/g')(g''/g')/2)` at `x_i`, with
/// `g'(x_i) = C_0 prod_{j != i}(x_i - x_j)` and
/// `g''(x_i)/g'(x_i) = 2 sum_{j != i} 1/(x_i - x_j)`.
pub fn dochev_byrnev_step(f: &Polynomial, x: &[Complex64]) -> Result<StepResult> {
    check_degree(f, x)?;
    check_distinct(x)?;
    let lead = Cdd::from(f.leading());
    let two = Cdd::from(Complex64::new(2.0, 0.0));
    let mut image = Vec::with_capacity(x.len());
    let mut w = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let (fx, dfx, _) = f.eval_derivs_dd(x[i]);
        let dg = lead * node_product(x, i);
        let ratio = fx / dg;
        // (f/g')(g''/g')/2 = (f/g') sum 1/(x_i - x_j)
        let bend = ratio * inverse_sum(x, i);
        image.push((Cdd::from(x[i]) - ratio * (two - dfx / dg + bend)).to_c64());
        w.push(ratio.to_c64());
    }
    Ok(StepResult { image: ApproxVector(image), corrections: w })
}

/// Prešić-Tanabe step: `x_i - W_i (1 - sigma_i)`.
pub fn tanabe_step(f: &Polynomial, x: &[Complex64]) -> Result<StepResult> {
    let w = prepare(f, x)?;
    let image = (0..x.len())
        .map(|i| (Cdd::from(x[i]) - w[i] * (Cdd::ONE - sigma(&w, x, i))).to_c64())
        .collect();
    Ok(StepResult { image: ApproxVector(image), corrections: rounded(&w) })
}

/// Dispatches on `kind`; Ehrlich uses the Börsch-Supan form.
pub fn step(kind: MethodKind, f: &Polynomial, x: &[Complex64]) -> Result<StepResult> {
    match kind {
        MethodKind::Weierstrass => weierstrass_step(f, x),
        MethodKind::Ehrlich => ehrlich_step_bs(f, x),
        MethodKind::DochevByrnev => dochev_byrnev_step(f, x),
        MethodKind::Tanabe => tanabe_step(f, x),
    }
}
