//! Exact arithmetic substrate: Laurent polynomials in the residue-cardinality
//! symbol `q` over arbitrary-precision rationals, and sparse bivariate integer
//! polynomials in (X, Y) for the clearing recursion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Laurent polynomial in `q` with rational coefficients. No zero coefficients
/// are stored; evaluation at any nonzero rational point is exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentQ {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant_i64(1)
    }

    pub fn constant_i64(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Self { terms }
    }

    /// c * q^e
    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// Build from (exponent, numerator, denominator) triples.
    pub fn from_triples(t: &[(i64, i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, n, d) in t {
            p = &p
                + &Self::monomial(
                    BigRational::new(BigInt::from(n), BigInt::from(d)),
                    e,
                );
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    /// Degree in q (max exponent); None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn insert_add(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by q^e.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at q = q0. Errors when q0 = 0 meets a negative exponent.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() && self.min_exponent().map_or(false, |e| e < 0) {
            return Err(Error::Domain(
                "evaluation at q = 0 with negative exponents".into(),
            ));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                pow_rat(q0, *e as u64)
            } else {
                BigRational::one() / pow_rat(q0, (-*e) as u64)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn eval_u64(&self, q0: u64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(q0)))
    }

    pub fn eval_big(&self, q0: &BigInt) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(q0.clone()))
    }

    /// Approximate evaluation (for numerics at large q).
    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rat_to_f64(c) * q0.powi(*e as i32))
            .sum()
    }
}

fn pow_rat(x: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    // exact for the moderate numerators/denominators used here
    let n = x.numer();
    let d = x.denom();
    big_to_f64(n) / big_to_f64(d)
}

pub fn big_to_f64(x: &BigInt) -> f64 {
    let (sign, digits) = x.to_u64_digits();
    let mut acc = 0.0f64;
    for d in digits.iter().rev() {
        acc = acc * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*q", c)?,
                _ => write!(f, "{}*q^{}", c, e)?,
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, -c);
        }
        out
    }
}

impl std::ops::Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// [OP] laurent_eval — exact evaluation of a Laurent polynomial.
pub fn laurent_eval(p: &LaurentQ, q0: &BigRational) -> Result<BigRational> {
    p.eval(q0)
}

/// Sparse bivariate integer polynomial in (X, Y). Keys are (m, n) with m the
/// Y-exponent and n the X-exponent; the map order is lexicographic with m
/// major, which is the monomial order the clearing recursion uses.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), BigInt::one());
        Self { terms }
    }

    /// c * X^n Y^m
    pub fn monomial(c: i64, m: i64, n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((m, n), BigInt::from(c));
        }
        Self { terms }
    }

    pub fn from_terms(t: &[(i64, i64, i64)]) -> Self {
        // (m, n, coeff)
        let mut out = Self::zero();
        for &(m, n, c) in t {
            out.insert_add((m, n), BigInt::from(c));
        }
        out
    }

    /// c * X^n Y^m with a big coefficient.
    pub fn monomial_big(c: BigInt, m: i64, n: i64) -> Self {
        let mut out = Self::zero();
        out.insert_add((m, n), c);
        out
    }

    /// Drop monomials with Y-exponent above `y_cap`.
    pub fn truncate_y(&self, y_cap: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| *m <= y_cap)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Multiply all coefficients by a big integer.
    pub fn scale_big(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> BigInt {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    pub fn max_y_degree(&self) -> i64 {
        self.terms.keys().next_back().map_or(0, |(m, _)| *m)
    }

    fn insert_add(&mut self, k: (i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_trunc(rhs, i64::MAX)
    }

    /// Product, discarding monomials with Y-exponent above `y_cap`.
    pub fn mul_trunc(&self, rhs: &Self, y_cap: i64) -> Self {
        let mut out = Self::zero();
        for ((m1, n1), c1) in &self.terms {
            for ((m2, n2), c2) in &rhs.terms {
                let m = m1 + m2;
                if m > y_cap {
                    continue;
                }
                out.insert_add((m, n1 + n2), c1 * c2);
            }
        }
        out
    }

    pub fn pow_trunc(&self, e: u64, y_cap: i64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, y_cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, y_cap);
            }
        }
        acc
    }

    /// Multiply by (1 + sign*x)^e where x = X^n Y^m, truncating at `y_cap`.
    /// Binomial expansion along the x-direction; this is the workhorse of the
    /// clearing recursion.
    pub fn mul_binomial_pow(&self, m: i64, n: i64, sign: i64, e: u64, y_cap: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        let k_cap = if m > 0 {
            ((y_cap.saturating_sub(0)) / m).max(0) as u64
        } else {
            e
        };
        // binomial coefficients C(e, k), k <= min(e, needed)
        let kmax_global = e.min(k_cap.saturating_add(1));
        let mut binom: Vec<BigInt> = Vec::with_capacity(kmax_global as usize + 1);
        let mut c = BigInt::one();
        binom.push(c.clone());
        for k in 0..kmax_global {
            c = c * BigInt::from(e - k) / BigInt::from(k + 1);
            binom.push(c.clone());
        }
        let mut out = Self::zero();
        for ((m1, n1), c1) in &self.terms {
            let kmax = if m > 0 {
                (((y_cap - m1) / m).max(-1)).min(e as i64)
            } else {
                e as i64
            };
            for k in 0..=kmax {
                if k as usize >= binom.len() {
                    break;
                }
                let mut term = c1 * &binom[k as usize];
                if sign < 0 && k % 2 == 1 {
                    term = -term;
                }
                out.insert_add((m1 + k * m, n1 + k * n), term);
            }
        }
        out
    }

    /// Lexicographically smallest exponent pair (m, n) > (0, 0) with nonzero
    /// coefficient (m major), together with its coefficient; None if constant.
    pub fn lex_min(&self) -> Option<(i64, i64, BigInt)> {
        self.terms
            .iter()
            .find(|((m, n), _)| (*m, *n) > (0, 0))
            .map(|((m, n), c)| (*m, *n, c.clone()))
    }

    /// Numeric evaluation at (x, y) complex (used by tests).
    pub fn eval_c64(
        &self,
        x: num_complex::Complex64,
        y: num_complex::Complex64,
    ) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for ((m, n), c) in &self.terms {
            acc += big_to_f64(c) * x.powi(*n as i32) * y.powi(*m as i32);
        }
        acc
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, n), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*X^{}*Y^{}", c, n, m)?;
        }
        Ok(())
    }
}

/// [OP] bivar_lex_min — smallest exponent pair (m, n) > (0, 0), m major.
pub fn bivar_lex_min(w: &BivarPoly) -> Option<(i64, i64, BigInt)> {
    w.lex_min()
}
