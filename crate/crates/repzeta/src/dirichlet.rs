//! Finite Dirichlet sums with coefficients and bases symbolic in q, and the
//! rational local-factor shape numerator / product of geometric factors.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::algebra::{rat_to_f64, LaurentQ};
use crate::dd::DdComplex;
use crate::{Error, Result};

/// A finite sum of terms coeff(q) * base(q)^(-s). Terms with equal base are
/// merged; zero-coefficient terms are dropped.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct DirichletPolynomialQ {
    terms: BTreeMap<LaurentQ, LaurentQ>,
}

impl DirichletPolynomialQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(LaurentQ::one(), LaurentQ::one());
        t
    }

    pub fn add_term(&mut self, coeff: LaurentQ, base: LaurentQ) {
        if coeff.is_zero() {
            return;
        }
        let remove = {
            let entry = self.terms.entry(base.clone()).or_insert_with(LaurentQ::zero);
            *entry = &*entry + &coeff;
            entry.is_zero()
        };
        if remove {
            self.terms.remove(&base);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(c.clone(), b.clone());
        }
        out
    }

    /// Multiply every term's coefficient by `c` and base by `b`
    /// (i.e. multiply the sum by c * b^(-s)).
    pub fn mul_term(&self, c: &LaurentQ, b: &LaurentQ) -> Self {
        let mut out = Self::zero();
        for (base, coeff) in &self.terms {
            out.add_term(coeff * c, base * b);
        }
        out
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentQ, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn coeff_of_base(&self, base: &LaurentQ) -> LaurentQ {
        self.terms.get(base).cloned().unwrap_or_else(LaurentQ::zero)
    }

    /// Symbolic value at s = -k (k >= 0): sum of coeff * base^k as a Laurent
    /// polynomial in q.
    pub fn eval_at_minus_k(&self, k: u32) -> LaurentQ {
        let mut acc = LaurentQ::zero();
        for (base, coeff) in &self.terms {
            acc = &acc + &(coeff * &base.pow(k));
        }
        acc
    }

    /// Specialize at an integer q. Checks that every base evaluates to a
    /// positive integer.
    pub fn specialize(&self, q0: &BigInt) -> Result<SpecializedDirichlet> {
        let mut terms: BTreeMap<BigInt, BigRational> = BTreeMap::new();
        for (base, coeff) in &self.terms {
            let b = base.eval_big(q0)?;
            if !b.is_integer() || !b.is_positive() {
                return Err(Error::Inconsistency(format!(
                    "base {:?} at q={} is not a positive integer: {}",
                    base, q0, b
                )));
            }
            let c = coeff.eval_big(q0)?;
            if c.is_zero() {
                continue;
            }
            let entry = terms
                .entry(b.to_integer())
                .or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SpecializedDirichlet { terms })
    }
}

/// A Dirichlet polynomial with concrete integer bases and rational
/// coefficients (one place's data).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedDirichlet {
    terms: BTreeMap<BigInt, BigRational>,
}

impl SpecializedDirichlet {
    pub fn from_integer_terms(t: &[(u64, i64)]) -> Self {
        let mut terms = BTreeMap::new();
        for &(base, c) in t {
            if c != 0 {
                terms.insert(
                    BigInt::from(base),
                    BigRational::from_integer(BigInt::from(c)),
                );
            }
        }
        Self { terms }
    }

    pub fn one() -> Self {
        Self::from_integer_terms(&[(1, 1)])
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, base: u64) -> BigRational {
        self.terms
            .get(&BigInt::from(base))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Smallest base > 1 with a nonzero coefficient.
    pub fn min_nontrivial_base(&self) -> Option<&BigInt> {
        self.terms.keys().find(|b| **b > BigInt::one())
    }

    /// All coefficients are nonnegative integers (representation counts).
    pub fn assert_counts(&self) -> Result<()> {
        for (b, c) in &self.terms {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Inconsistency(format!(
                    "coefficient {} at base {} is not a nonnegative integer",
                    c, b
                )));
            }
        }
        Ok(())
    }

    /// Numeric evaluation at complex s (f64).
    pub fn eval_c64(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, c) in &self.terms {
            let lb = big_ln(b);
            acc += rat_to_f64(c) * (-s * lb).exp();
        }
        acc
    }

    /// d/ds of the sum, at complex s (f64).
    pub fn eval_deriv_c64(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, c) in &self.terms {
            let lb = big_ln(b);
            acc += rat_to_f64(c) * (-lb) * (-s * lb).exp();
        }
        acc
    }

    /// Double-double evaluation for residual certification.
    pub fn eval_dd(&self, s: DdComplex) -> DdComplex {
        let mut acc = DdComplex::zero();
        for (b, c) in &self.terms {
            let lb = crate::dd::Dd::ln_big(b);
            let cd = crate::dd::Dd::from_rational(c);
            acc = acc + (s.neg() * DdComplex::real(lb)).exp().scale(cd);
        }
        acc
    }
}

/// ln of a positive big integer, good to ~1 ulp for the sizes used here.
pub fn big_ln(b: &BigInt) -> f64 {
    let bits = b.bits();
    if bits <= 53 {
        (b.to_f64().unwrap()).ln()
    } else {
        let shift = bits - 53;
        let top = (b >> shift).to_f64().unwrap();
        top.ln() + (shift as f64) * std::f64::consts::LN_2
    }
}

/// (1 - q^a * (q^b)^(-s)) with b > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeometricFactor {
    pub a: i64,
    pub b: i64,
}

impl GeometricFactor {
    pub fn new(a: i64, b: i64) -> Self {
        assert!(b > 0);
        Self { a, b }
    }

    /// Value of 1 - q^(a - b s) at numeric q, s.
    pub fn eval_c64(&self, q: f64, s: Complex64) -> Complex64 {
        let lq = q.ln();
        Complex64::new(1.0, 0.0)
            - ((Complex64::new(self.a as f64, 0.0) - (self.b as f64) * s) * lq).exp()
    }
}

/// numerator(s) / prod (1 - q^{a_i} (q^{b_i})^{-s}).
#[derive(Clone, Debug)]
pub struct LocalFactorRational {
    pub numerator: DirichletPolynomialQ,
    pub denominators: Vec<GeometricFactor>,
}

/// Specialized local factor: numerator over the same geometric denominators,
/// at a concrete place.
#[derive(Clone, Debug)]
pub struct SpecializedLocalFactor {
    pub q: BigInt,
    pub numerator: SpecializedDirichlet,
    pub denominators: Vec<GeometricFactor>,
}

impl SpecializedLocalFactor {
    /// Exact Dirichlet coefficients (dimension -> count) up to `cutoff`,
    /// expanding each geometric denominator as a geometric series.
    pub fn coefficients(&self, cutoff: u64) -> Result<BTreeMap<u64, BigUint>> {
        let cut = BigInt::from(cutoff);
        let mut acc: BTreeMap<BigInt, BigRational> = BTreeMap::new();
        for (b0, c0) in self.numerator.terms() {
            if *b0 > cut {
                continue;
            }
            let mut stack = vec![(b0.clone(), c0.clone(), 0usize)];
            while let Some((b, c, i)) = stack.pop() {
                if i == self.denominators.len() {
                    *acc.entry(b).or_insert_with(BigRational::zero) += c;
                    continue;
                }
                let g = self.denominators[i];
                let mult = pow_big(&self.q, g.a);
                let step = self.q.pow(g.b as u32);
                let mut bk = b;
                let mut ck = c;
                loop {
                    stack.push((bk.clone(), ck.clone(), i + 1));
                    bk = &bk * &step;
                    if bk > cut {
                        break;
                    }
                    ck = ck * mult.clone();
                }
            }
        }
        let mut out = BTreeMap::new();
        for (b, c) in acc {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Inconsistency(format!(
                    "local coefficient at degree {} is {} (not a nonnegative integer)",
                    b, c
                )));
            }
            out.insert(
                b.to_u64()
                    .ok_or_else(|| Error::Domain("degree overflow".into()))?,
                c.to_integer().to_biguint().unwrap(),
            );
        }
        Ok(out)
    }

    /// Value of the full local factor at complex s (needs Re s large enough
    /// that |q^{a - b s}| < 1 for each denominator).
    pub fn eval_c64(&self, s: Complex64) -> Complex64 {
        let qf = crate::algebra::big_to_f64(&self.q);
        let mut v = self.numerator.eval_c64(s);
        for g in &self.denominators {
            v /= g.eval_c64(qf, s);
        }
        v
    }
}

fn pow_big(q: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(q.pow(e as u32))
    } else {
        BigRational::new(BigInt::one(), q.pow((-e) as u32))
    }
}
