//! Complex double-double arithmetic (about 106 significant bits), enough to
//! evaluate cancelling sums well below binary64 rounding.

use std::ops::{Add, Div, Mul, Sub};

use certiroot::{Complex64, Polynomial};

#[derive(Clone, Copy, Debug, Default)]
pub struct W {
    hi: f64,
    lo: f64,
}

fn sum2(a: f64, b: f64) -> W {
    let s = a + b;
    let v = s - a;
    W { hi: s, lo: (a - (s - v)) + (b - v) }
}

fn fast(a: f64, b: f64) -> W {
    let s = a + b;
    W { hi: s, lo: b - (s - a) }
}

impl W {
    pub fn f(v: f64) -> W {
        W { hi: v, lo: 0.0 }
    }
    pub fn get(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for W {
    type Output = W;
    fn add(self, o: W) -> W {
        let s = sum2(self.hi, o.hi);
        let t = sum2(self.lo, o.lo);
        let u = fast(s.hi, s.lo + t.hi);
        fast(u.hi, u.lo + t.lo)
    }
}

impl Sub for W {
    type Output = W;
    fn sub(self, o: W) -> W {
        self + W { hi: -o.hi, lo: -o.lo }
    }
}

impl Mul for W {
    type Output = W;
    fn mul(self, o: W) -> W {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        fast(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl Div for W {
    type Output = W;
    fn div(self, o: W) -> W {
        // two Newton corrections of the binary64 quotient
        let q1 = self.hi / o.hi;
        let r = self - o * W::f(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * W::f(q2);
        fast(q1, q2) + W::f(r.hi / o.hi)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Z {
    re: W,
    im: W,
}

impl Z {
    pub fn one() -> Z {
        Z { re: W::f(1.0), im: W::f(0.0) }
    }
    pub fn get(self) -> Complex64 {
        Complex64::new(self.re.get(), self.im.get())
    }
}

impl From<Complex64> for Z {
    fn from(z: Complex64) -> Z {
        Z { re: W::f(z.re), im: W::f(z.im) }
    }
}

impl Add for Z {
    type Output = Z;
    fn add(self, o: Z) -> Z {
        Z { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Z {
    type Output = Z;
    fn sub(self, o: Z) -> Z {
        Z { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Z {
    type Output = Z;
    fn mul(self, o: Z) -> Z {
        Z { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for Z {
    type Output = Z;
    fn div(self, o: Z) -> Z {
        let den = o.re * o.re + o.im * o.im;
        Z { re: (self.re * o.re + self.im * o.im) / den, im: (self.im * o.re - self.re * o.im) / den }
    }
}

/// `(f(z), f'(z))`.
pub fn eval_derivs(f: &Polynomial, z: Z) -> (Z, Z) {
    let mut acc = Z::from(f.coeffs()[0]);
    let mut d1 = Z::default();
    for &c in &f.coeffs()[1..] {
        d1 = d1 * z + acc;
        acc = acc * z + Z::from(c);
    }
    (acc, d1)
}

pub fn node_product(x: &[Z], i: usize) -> Z {
    (0..x.len()).filter(|&j| j != i).fold(Z::one(), |acc, j| acc * (x[i] - x[j]))
}

pub fn corrections(f: &Polynomial, x: &[Z]) -> Vec<Z> {
    let lead = Z::from(f.leading());
    (0..x.len()).map(|i| eval_derivs(f, x[i]).0 / (lead * node_product(x, i))).collect()
}
