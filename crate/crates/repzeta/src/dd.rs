//! Double-double arithmetic (~32 significant digits) for residual
//! certification near the natural boundary, where the spec requires more
//! than double precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
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

pub const DD_LN2: Dd = Dd {
    hi: 0.6931471805599453,
    lo: 2.3190468138462996e-17,
};
pub const DD_PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};
pub const DD_PI_2: Dd = Dd {
    hi: 1.5707963267948966,
    lo: 6.123233995736766e-17,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Exact conversion from a rational (two roundings).
    pub fn from_rational(x: &BigRational) -> Self {
        let hi = crate::algebra::rat_to_f64(x);
        let r = x - BigRational::from_f64(hi).unwrap();
        Dd::new(hi, crate::algebra::rat_to_f64(&r))
    }

    /// Exact-to-106-bits conversion from a positive big integer, then ln.
    pub fn ln_big(b: &BigInt) -> Self {
        let hi = crate::algebra::big_to_f64(b);
        let r = b - BigInt::from_f64(hi).unwrap();
        let x = Dd::new(hi, crate::algebra::big_to_f64(&r));
        x.ln()
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p1, p2) = two_prod(q1, b);
        let r = self - Dd::new(p1, p2);
        let q2 = (r.hi + r.lo) / b;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0);
        let y = Dd::from_f64(self.hi.sqrt());
        // one Newton step: y' = (y + x/y)/2
        ((self / y) + y).mul_f64(0.5)
    }

    pub fn exp(self) -> Self {
        // range reduction: x = k ln2 + r
        let k = (self.hi / DD_LN2.hi).round();
        let r = self - DD_LN2.mul_f64(k);
        // Taylor on |r| <= ln2/2
        let mut sum = Dd::ONE + r;
        let mut term = r;
        for n in 2..26 {
            term = (term * r).div_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        // scale by 2^k
        let sc = (k as i32).clamp(-1000, 1000);
        Dd::new(ldexp(sum.hi, sc), ldexp(sum.lo, sc))
    }

    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let mut y = Dd::from_f64(self.hi.ln());
        // Newton: y += x * exp(-y) - 1, twice
        for _ in 0..2 {
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// sin and cos, with argument reduction mod pi/2.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let n = (self.hi / DD_PI_2.hi).round();
        let r = self - DD_PI_2.mul_f64(n);
        let (s, c) = sin_cos_taylor(r);
        match (n as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

fn ldexp(x: f64, e: i32) -> f64 {
    // x * 2^e without a libm dependency
    if e >= 0 {
        x * f64::from_bits(((1023u64 + e as u64) << 52).min(0x7fe0000000000000))
    } else {
        let e = (-e) as u64;
        if e > 1000 {
            return 0.0;
        }
        x / f64::from_bits((1023u64 + e) << 52)
    }
}

fn sin_cos_taylor(r: Dd) -> (Dd, Dd) {
    // |r| <= pi/4 + tiny
    let r2 = r * r;
    let mut s = r;
    let mut term = r;
    let mut n = 1.0f64;
    for _ in 0..16 {
        term = -(term * r2).div_f64((n + 1.0) * (n + 2.0));
        s = s + term;
        n += 2.0;
        if term.hi.abs() < 1e-36 {
            break;
        }
    }
    let mut c = Dd::ONE;
    let mut termc = Dd::ONE;
    let mut m = 0.0f64;
    for _ in 0..16 {
        termc = -(termc * r2).div_f64((m + 1.0) * (m + 2.0));
        c = c + termc;
        m += 2.0;
        if termc.hi.abs() < 1e-36 {
            break;
        }
    }
    (s, c)
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let mut r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::new(s, e + q3)
    }
}

/// Complex number over Dd.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub fn zero() -> Self {
        DdComplex {
            re: Dd::ZERO,
            im: Dd::ZERO,
        }
    }

    pub fn real(re: Dd) -> Self {
        DdComplex { re, im: Dd::ZERO }
    }

    pub fn from_c64(z: num_complex::Complex64) -> Self {
        DdComplex {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn neg(self) -> Self {
        DdComplex {
            re: -self.re,
            im: -self.im,
        }
    }

    pub fn scale(self, c: Dd) -> Self {
        DdComplex {
            re: self.re * c,
            im: self.im * c,
        }
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        DdComplex {
            re: m * c,
            im: m * s,
        }
    }

    pub fn abs(self) -> Dd {
        (self.re.sqr() + self.im.sqr()).sqrt()
    }
}

impl std::ops::Add for DdComplex {
    type Output = DdComplex;
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl std::ops::Sub for DdComplex {
    type Output = DdComplex;
    fn sub(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl std::ops::Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: Dd, expect_hi: f64, expect_lo: f64, tol: f64) {
        let diff = (x - Dd::new(expect_hi, expect_lo)).abs();
        assert!(
            diff.hi.abs() <= tol,
            "got {:?}, want ({}, {}), diff {:e}",
            x,
            expect_hi,
            expect_lo,
            diff.hi
        );
    }

    #[test]
    fn exp_ln_sin_cos_reference() {
        // hi/lo pairs computed at 50 digits
        assert_close(
            Dd::ONE.exp(),
            2.718281828459045,
            1.4456468917292502e-16,
            1e-30,
        );
        assert_close(
            Dd::from_f64(7.0).ln(),
            1.9459101490553132,
            7.323586207904907e-17,
            1e-30,
        );
        let (s, c) = Dd::ONE.sin_cos();
        assert_close(s, 0.8414709848078965, 1.776845092935536e-18, 2e-30);
        assert_close(c, 0.5403023058681398, -4.760954612604417e-17, 2e-30);
    }

    #[test]
    fn ln_big_matches() {
        // ln(10^30) = 30 ln 10 = 69.07755278982137052053974364053092622803
        let b = BigInt::from(10u32).pow(30);
        let x = Dd::ln_big(&b);
        assert!((x.to_f64() - 69.07755278982137).abs() < 1e-13);
        // check the dd tail against 30*ln(10) in dd
        let ln10 = Dd::new(2.302585092994046, -2.1707562233822494e-16);
        let want = ln10.mul_f64(30.0);
        assert!((x - want).abs().hi < 1e-30);
    }

    #[test]
    fn div_and_sqrt() {
        let x = Dd::from_f64(2.0).sqrt();
        let err = x * x - Dd::from_f64(2.0);
        assert!(err.abs().hi < 1e-31);
        let y = Dd::ONE / Dd::from_f64(3.0);
        let err = y.mul_f64(3.0) - Dd::ONE;
        assert!(err.abs().hi < 1e-31);
    }

    #[test]
    fn complex_exp_modulus() {
        // |exp(i t)| = 1
        let z = DdComplex {
            re: Dd::ZERO,
            im: Dd::from_f64(2.5),
        };
        let m = z.exp().abs();
        assert!((m - Dd::ONE).abs().hi < 1e-30);
    }
}
