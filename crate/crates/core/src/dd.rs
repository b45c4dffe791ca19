//! Double-double arithmetic (pairs of binary64 values with ~106 bits of
//! significand), used to evaluate polynomials, corrections and step
//! denominators where long sums cancel.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    fn renorm(hi: f64, lo: f64) -> Dd {
        // keep non-finite values from turning into NaN through the error term
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Dd {
        Dd { hi, lo: 0.0 }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + -o
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::renorm(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        if !q1.is_finite() {
            return Dd::from(q1);
        }
        let r = self - o * Dd::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from(q2);
        let q3 = r.hi / o.hi;
        Dd::renorm(q1, q2) + Dd::from(q3)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    pub const ONE: Cdd = Cdd { re: Dd { hi: 1.0, lo: 0.0 }, im: Dd { hi: 0.0, lo: 0.0 } };

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn scale(self, s: f64) -> Cdd {
        let s = Dd::from(s);
        Cdd { re: self.re * s, im: self.im * s }
    }

    pub fn inv(self) -> Cdd {
        Cdd::ONE / self
    }
}

impl From<Complex64> for Cdd {
    fn from(z: Complex64) -> Cdd {
        Cdd { re: z.re.into(), im: z.im.into() }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, o: Cdd) -> Cdd {
        // scale by a power of two so the squared modulus cannot overflow
        let m = o.re.hi.abs().max(o.im.hi.abs());
        let s = if m > 0.0 && m.is_finite() { 2f64.powi(-(m.log2().floor() as i32)) } else { 1.0 };
        let (c, d) = (o.re * Dd::from(s), o.im * Dd::from(s));
        let den = c * c + d * d;
        let re = (self.re * c + self.im * d) / den;
        let im = (self.im * c - self.re * d) / den;
        Cdd { re: re * Dd::from(s), im: im * Dd::from(s) }
    }
}

impl std::iter::Sum for Cdd {
    fn sum<I: Iterator<Item = Cdd>>(iter: I) -> Cdd {
        iter.fold(Cdd::default(), |a, b| a + b)
    }
}

impl std::iter::Product for Cdd {
    fn product<I: Iterator<Item = Cdd>>(iter: I) -> Cdd {
        iter.fold(Cdd::ONE, |a, b| a * b)
    }
}
