//! Polynomial and starting-vector input, from inline flags or JSON files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use certiroot::{ApproxVector, Complex64, Error, Polynomial};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    coeffs: ApproxVector,
    #[serde(default)]
    guess: Option<ApproxVector>,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub f: Polynomial,
    pub guess: Option<ApproxVector>,
}

pub fn from_file(path: &Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file: InputFile = serde_json::from_str(&text).with_context(|| format!("{}: malformed input", path.display()))?;
    let f = polynomial(file.coeffs.0).with_context(|| format!("{}: field 'coeffs'", path.display()))?;
    if let Some(g) = &file.guess {
        check_guess(&f, g).with_context(|| format!("{}: field 'guess'", path.display()))?;
    }
    Ok(Problem { f, guess: file.guess })
}

pub fn from_flags(coeffs: &str, guess: Option<&str>) -> Result<Problem> {
    let f = polynomial(reals("--coeffs", coeffs)?)?;
    let guess = match guess {
        Some(text) => {
            let g = ApproxVector(reals("--guess", text)?);
            check_guess(&f, &g).context("--guess")?;
            Some(g)
        }
        None => None,
    };
    Ok(Problem { f, guess })
}

/// Comma-separated real numbers.
fn reals(flag: &str, text: &str) -> Result<Vec<Complex64>> {
    text.split(',')
        .enumerate()
        .map(|(i, item)| {
            let item = item.trim();
            item.parse::<f64>()
                .map(|re| Complex64::new(re, 0.0))
                .map_err(|_| anyhow!("{flag}: item {} ('{item}') is not a number", i + 1))
        })
        .collect()
}

fn polynomial(coeffs: Vec<Complex64>) -> Result<Polynomial> {
    Polynomial::new(coeffs).map_err(|e| match e {
        Error::NonFinite(i) => anyhow!("coefficient {i} is not finite"),
        other => anyhow!(other),
    })
}

fn check_guess(f: &Polynomial, g: &ApproxVector) -> Result<()> {
    if g.len() != f.degree() {
        bail!("expected {} approximations for a degree-{} polynomial, got {}", f.degree(), f.degree(), g.len());
    }
    if let Some(i) = g.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        bail!("approximation {i} is not finite");
    }
    g.check_distinct().map_err(|e| anyhow!(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_reals() {
        let p = from_flags("1, 0, -1", Some("2,-2")).unwrap();
        assert_eq!(p.f.degree(), 2);
        assert_eq!(p.guess.unwrap().0, vec![Complex64::new(2.0, 0.0), Complex64::new(-2.0, 0.0)]);
    }

    #[test]
    fn inline_errors_name_the_item() {
        let err = from_flags("1,x,-1", None).unwrap_err().to_string();
        assert!(err.contains("item 2 ('x')"), "{err}");
        let err = format!("{:#}", from_flags("1,0,-1", Some("1,1")).unwrap_err());
        assert!(err.contains("--guess") && err.contains("coincide"), "{err}");
        let err = format!("{:#}", from_flags("1,0,-1", Some("1,2,3")).unwrap_err());
        assert!(err.contains("expected 2"), "{err}");
        assert!(from_flags("0,1,2", None).unwrap_err().to_string().contains("leading"));
        assert!(from_flags("1,inf,2", None).unwrap_err().to_string().contains("coefficient 1"));
    }
}
