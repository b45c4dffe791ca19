//! `{"re": .., "im": ..}` encoding for complex numbers.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Repr {
    re: f64,
    im: f64,
}

impl From<Complex64> for Repr {
    fn from(z: Complex64) -> Self {
        Repr { re: z.re, im: z.im }
    }
}

pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    Repr::from(*z).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    let r = Repr::deserialize(d)?;
    Ok(Complex64::new(r.re, r.im))
}

/// Same encoding for sequences.
pub mod vec {
    use super::Repr;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Repr> = v.iter().map(|&z| z.into()).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let reprs = Vec::<Repr>::deserialize(d)?;
        Ok(reprs.into_iter().map(|r| Complex64::new(r.re, r.im)).collect())
    }
}
