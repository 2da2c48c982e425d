//! Double-double arithmetic (about 31 significant digits), used to keep
//! embeddings accurate when an element has a tiny conjugate.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
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

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DD { hi: x, lo: 0.0 }
    }

    /// Exact for `|x| < 2^106`.
    pub fn from_i128(x: i128) -> Self {
        let hi = x as f64;
        let rest = x - hi as i128;
        let (s, e) = quick_two_sum(hi, rest as f64);
        DD { hi: s, lo: e }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, o: DD) -> DD {
        self + (-o)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self - o * DD::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DD::from_f64(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::from_f64(q3)
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CDD {
    pub re: DD,
    pub im: DD,
}

impl CDD {
    pub const ZERO: CDD = CDD {
        re: DD::ZERO,
        im: DD::ZERO,
    };
    pub const ONE: CDD = CDD {
        re: DD::ONE,
        im: DD::ZERO,
    };

    pub fn from_c64(z: Complex64) -> Self {
        CDD {
            re: DD::from_f64(z.re),
            im: DD::from_f64(z.im),
        }
    }

    pub fn from_dd(x: DD) -> Self {
        CDD {
            re: x,
            im: DD::ZERO,
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, s: DD) -> CDD {
        CDD {
            re: self.re * s,
            im: self.im * s,
        }
    }
}

impl Add for CDD {
    type Output = CDD;
    fn add(self, o: CDD) -> CDD {
        CDD {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for CDD {
    type Output = CDD;
    fn sub(self, o: CDD) -> CDD {
        CDD {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for CDD {
    type Output = CDD;
    fn mul(self, o: CDD) -> CDD {
        CDD {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for CDD {
    type Output = CDD;
    fn div(self, o: CDD) -> CDD {
        let d = o.re * o.re + o.im * o.im;
        let num = self
            * CDD {
                re: o.re,
                im: -o.im,
            };
        CDD {
            re: num.re / d,
            im: num.im / d,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_cancellation() {
        // Newton for sqrt 2 in double-double
        let two = DD::from_f64(2.0);
        let mut x = DD::from_f64(2f64.sqrt());
        for _ in 0..3 {
            x = (x + two / x) * DD::from_f64(0.5);
        }
        // (1+sqrt2)^-20 computed as a - b sqrt2 with huge a, b
        let a = DD::from_i128(22619537);
        let b = DD::from_i128(15994428);
        let small = a - b * x;
        let exact = (1.0 + 2f64.sqrt()).powi(-20);
        assert!((small.to_f64() / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn big_integers_exact() {
        let x: i128 = (1 << 80) + 12345;
        let d = DD::from_i128(x);
        assert_eq!(d.hi as i128 + d.lo as i128, x);
    }
}
