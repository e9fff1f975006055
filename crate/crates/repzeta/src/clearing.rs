//! The cyclotomic clearing recursion: building blocks P+/P-, the paired
//! polynomial iteration, the recorded step ledger, and its translation into a
//! global zeta/L factor list.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::BivarPoly;
use crate::{Error, Result};

/// The pair (W+, W-) in Z[X, Y].
#[derive(Clone, Debug, PartialEq)]
pub struct SignedPolyPair {
    pub w_plus: BivarPoly,
    pub w_minus: BivarPoly,
}

impl SignedPolyPair {
    /// W+,0 = 1 + 9 X^3 Y^5 - 9 X^5 Y^8 and W-,0 = 1 + X^3 Y^5 - X^5 Y^8.
    pub fn initial() -> Self {
        Self {
            w_plus: BivarPoly::from_terms(&[(0, 0, 1), (5, 3, 9), (8, 5, -9)]),
            w_minus: BivarPoly::from_terms(&[(0, 0, 1), (5, 3, 1), (8, 5, -1)]),
        }
    }

    /// Invariants: constant terms 1, coefficients congruent mod 2.
    pub fn check_invariants(&self) -> Result<()> {
        use num_traits::One;
        if !self.w_plus.constant_term().is_one() || !self.w_minus.constant_term().is_one() {
            return Err(Error::Inconsistency("constant term is not 1".into()));
        }
        let keys: std::collections::BTreeSet<(i64, i64)> = self
            .w_plus
            .terms()
            .map(|(k, _)| *k)
            .chain(self.w_minus.terms().map(|(k, _)| *k))
            .collect();
        for (m, n) in keys {
            let a = self.w_plus.coeff(m, n);
            let b = self.w_minus.coeff(m, n);
            if ((a - b) % BigInt::from(2)) != BigInt::zero() {
                return Err(Error::Inconsistency(format!(
                    "coefficients at X^{} Y^{} not congruent mod 2",
                    n, m
                )));
            }
        }
        Ok(())
    }

    /// Smallest index (m, n) > (0, 0) where either polynomial is nonzero.
    pub fn min_index(&self) -> Option<(i64, i64)> {
        let a = self.w_plus.lex_min().map(|(m, n, _)| (m, n));
        let b = self.w_minus.lex_min().map(|(m, n, _)| (m, n));
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }
}

/// One recorded clearing step: the cleared index and the pair of coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClearingStep {
    pub m: i64,
    pub n: i64,
    pub alpha: i64,
    pub beta: i64,
}

/// A product of factors (1 - x)^e or (1 + x)^e; sign +1 means (1 + x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicProduct {
    pub factors: Vec<(i8, u64)>,
}

impl CyclotomicProduct {
    fn push(&mut self, sign: i8, e: i64) {
        debug_assert!(e >= 0);
        if e != 0 {
            self.factors.push((sign, e as u64));
        }
    }

    /// Value at a real/complex point x (used by the Euler-product oracle).
    pub fn eval_c64(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        let one = num_complex::Complex64::new(1.0, 0.0);
        self.factors.iter().fold(one, |acc, &(sign, e)| {
            acc * (one + (sign as f64) * x).powi(e as i32)
        })
    }

    /// Exact rational value at x (for the per-place identity checks).
    pub fn eval_rational(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        use num_traits::One;
        let one = num_rational::BigRational::one();
        self.factors.iter().fold(one.clone(), |acc, &(sign, e)| {
            let base = if sign > 0 { &one + x } else { &one - x };
            let mut p = num_rational::BigRational::one();
            for _ in 0..e {
                p *= &base;
            }
            acc * p
        })
    }

    /// Multiply `w` by this product with x = X^n Y^m, truncating at `y_cap`.
    pub fn apply(&self, w: &BivarPoly, m: i64, n: i64, y_cap: i64) -> BivarPoly {
        let mut out = w.clone();
        for &(sign, e) in &self.factors {
            out = out.mul_binomial_pow(m, n, sign as i64, e, y_cap);
        }
        out
    }

    /// Multiply `w` by the INVERSE of this product as a power series,
    /// truncated at Y-degree `y_cap` (used by the reconstruction check).
    pub fn apply_inverse(&self, w: &BivarPoly, m: i64, n: i64, y_cap: i64) -> BivarPoly {
        assert!(m > 0);
        let mut out = w.clone();
        for &(sign, e) in &self.factors {
            // (1 + sign x)^{-e} = sum_k C(e+k-1, k) (-sign)^k x^k
            let kmax = (y_cap / m) as u64 + 1;
            let mut series = BivarPoly::one();
            let mut coeff = BigInt::from(1);
            for k in 1..=kmax {
                coeff = coeff * BigInt::from(e + k - 1) / BigInt::from(k);
                let c = if sign > 0 && k % 2 == 1 {
                    -&coeff
                } else {
                    coeff.clone()
                };
                series = series.add(&BivarPoly::monomial_big(c, (k as i64) * m, (k as i64) * n));
            }
            out = out.mul_trunc(&series, y_cap);
        }
        out
    }
}

/// [OP] p_plus: the four-case product for the `+` family. Linear term -n x.
pub fn p_plus(n: i64, m: i64) -> Result<CyclotomicProduct> {
    if (n - m) % 2 != 0 {
        return Err(Error::Domain(format!(
            "P+({}, {}): arguments must have equal parity",
            n, m
        )));
    }
    let mut p = CyclotomicProduct { factors: vec![] };
    if m.abs() <= n {
        p.push(-1, n);
    } else if n.abs() <= -m {
        p.push(1, -(n + m) / 2);
        p.push(-1, (n - m) / 2);
    } else if m.abs() <= -n {
        p.push(1, -n);
    } else if n.abs() <= m {
        p.push(-1, (n + m) / 2);
        p.push(1, -(n - m) / 2);
    } else {
        unreachable!("|n| and |m| cannot both exceed the other");
    }
    Ok(p)
}

/// [OP] p_minus: the four-case product for the `-` family, with the first
/// case keyed on |m| <= n so that the zeta/L product identity holds in all
/// four cases. Linear term -m x.
pub fn p_minus(n: i64, m: i64) -> Result<CyclotomicProduct> {
    if (n - m) % 2 != 0 {
        return Err(Error::Domain(format!(
            "P-({}, {}): arguments must have equal parity",
            n, m
        )));
    }
    let mut p = CyclotomicProduct { factors: vec![] };
    if m.abs() <= n {
        p.push(-1, (n + m) / 2);
        p.push(1, (n - m) / 2);
    } else if n.abs() <= -m {
        p.push(1, -m);
    } else if m.abs() <= -n {
        p.push(1, -(n + m) / 2);
        p.push(-1, -(n - m) / 2);
    } else if n.abs() <= m {
        p.push(-1, m);
    } else {
        unreachable!();
    }
    Ok(p)
}

/// [OP] clearing_step: clear the minimal nontrivial monomial of the pair.
/// Returns the new pair and the recorded step. `y_cap` truncates the
/// polynomials (use i64::MAX for exact full arithmetic).
pub fn clearing_step(pair: &SignedPolyPair, y_cap: i64) -> Result<(SignedPolyPair, ClearingStep)> {
    let (m, n) = pair
        .min_index()
        .ok_or_else(|| Error::Domain("finished: pair is constant".into()))?;
    let alpha = pair
        .w_plus
        .coeff(m, n)
        .to_i64()
        .ok_or_else(|| Error::Domain("clearing coefficient exceeds i64".into()))?;
    let beta = pair
        .w_minus
        .coeff(m, n)
        .to_i64()
        .ok_or_else(|| Error::Domain("clearing coefficient exceeds i64".into()))?;
    let step = ClearingStep { m, n, alpha, beta };
    let pp = p_plus(alpha, beta)?;
    let pm = p_minus(alpha, beta)?;
    let next = SignedPolyPair {
        w_plus: pp.apply(&pair.w_plus, m, n, y_cap),
        w_minus: pm.apply(&pair.w_minus, m, n, y_cap),
    };
    Ok((next, step))
}

/// [OP] run_clearing: run `depth` clearing steps from W(+-),0 with full
/// (untruncated) polynomial arithmetic. Practical through depth ~6; the
/// polynomials at depth 8 have tens of millions of monomials.
pub fn run_clearing(depth: usize) -> Result<(Vec<ClearingStep>, SignedPolyPair)> {
    run_clearing_from(SignedPolyPair::initial(), depth, i64::MAX)
}

/// Ledger-exact truncated variant: computes the same ledger as the full
/// recursion provided every cleared index stays below `y_cap` / 2 (asserted).
pub fn run_clearing_trunc(depth: usize, y_cap: i64) -> Result<(Vec<ClearingStep>, SignedPolyPair)> {
    run_clearing_from(SignedPolyPair::initial(), depth, y_cap)
}

fn run_clearing_from(
    start: SignedPolyPair,
    depth: usize,
    y_cap: i64,
) -> Result<(Vec<ClearingStep>, SignedPolyPair)> {
    let mut pair = start;
    let mut ledger = Vec::with_capacity(depth);
    pair.check_invariants()?;
    let mut last_index = (0i64, 0i64);
    for _ in 0..depth {
        let (next, step) = clearing_step(&pair, y_cap)?;
        if y_cap != i64::MAX && step.m > y_cap / 2 {
            return Err(Error::Domain(format!(
                "truncation cap {} too small for cleared index Y^{}",
                y_cap, step.m
            )));
        }
        // the cleared index strictly increases
        if (step.m, step.n) <= last_index {
            return Err(Error::Inconsistency(
                "cleared index did not increase".into(),
            ));
        }
        last_index = (step.m, step.n);
        next.check_invariants()?;
        // the cleared monomial is gone and no smaller one was introduced
        if let Some(idx) = next.min_index() {
            if idx <= (step.m, step.n) {
                return Err(Error::Inconsistency(format!(
                    "monomial at or below the cleared index survived: {:?}",
                    idx
                )));
            }
        }
        ledger.push(step);
        pair = next;
    }
    Ok((ledger, pair))
}

/// Kind of a global factor: the Dedekind zeta of k (with S-factors removed)
/// or the L-function of the character chi*psi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Zeta,
    LChiPsi,
}

/// zeta^S(a s - b)^exponent or L^S(a s - b, chi psi)^exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlobalFactor {
    pub kind: FactorKind,
    pub a: i64,
    pub b: i64,
    pub exponent: i64,
}

/// [OP] ledger_to_global_factors: the zeta/L factor list equal to the inverse
/// of the cleared cyclotomic products, at arguments m_j s - n_j with the
/// doubled-argument corrections from the case table.
pub fn ledger_to_global_factors(ledger: &[ClearingStep]) -> Vec<GlobalFactor> {
    let mut out = Vec::new();
    for st in ledger {
        let (a, b) = (st.m, st.n);
        let (al, be) = (st.alpha, st.beta);
        let mut push = |kind: FactorKind, a: i64, b: i64, e: i64| {
            if e != 0 {
                out.push(GlobalFactor {
                    kind,
                    a,
                    b,
                    exponent: e,
                });
            }
        };
        // inverse of zeta^{-(al+be)/2} L^{-(al-be)/2} * case
        push(FactorKind::Zeta, a, b, (al + be) / 2);
        push(FactorKind::LChiPsi, a, b, (al - be) / 2);
        // case factor zeta(2s')^c, inverted
        let c = if be.abs() <= al {
            0
        } else if al.abs() <= -be {
            (al + be) / 2
        } else if be.abs() <= -al {
            al
        } else {
            (al - be) / 2
        };
        push(FactorKind::Zeta, 2 * a, 2 * b, -c);
    }
    out
}

/// Checks that a monomial (m, n) = (Y-exp, X-exp) lies on the exponent
/// lattice (5u + 8v, 3u + 5v) with u, v >= 0; returns (u, v).
pub fn lattice_coordinates(m: i64, n: i64) -> Option<(i64, i64)> {
    // inverse of [5 8; 3 5] (det 1): u = 5m - 8n, v = -3m + 5n... check:
    // [3 5; 5 8]^{-1} = [-8 5; 5 -3]/(det -1) => u = 8n - 5m? recompute:
    // n = 3u + 5v, m = 5u + 8v. det([[3,5],[5,8]]) = 24 - 25 = -1.
    // u = (8n - 5m)/(-1) = 5m - 8n, v = (5n - 3m)... (-(5n-3m)) = 3m - 5n? no:
    // inverse matrix: 1/det * [8 -5; -5 3] = -[8 -5; -5 3].
    // (u, v)^T = -[8 -5; -5 3] (n, m)^T = (5m - 8n, 5n - 3m).
    let u = 5 * m - 8 * n;
    let v = 5 * n - 3 * m;
    if u >= 0 && v >= 0 && 3 * u + 5 * v == n && 5 * u + 8 * v == m {
        Some((u, v))
    } else {
        None
    }
}

/// All monomials of the polynomial lie on the exponent lattice.
pub fn check_lattice(w: &BivarPoly) -> Result<()> {
    for ((m, n), _) in w.terms() {
        if lattice_coordinates(*m, *n).is_none() {
            return Err(Error::Inconsistency(format!(
                "monomial X^{} Y^{} off the exponent lattice",
                n, m
            )));
        }
    }
    Ok(())
}

/// Validity margin of a depth-i continuation: the remaining pair's support
/// forces absolute convergence for Re s > 5/8 + delta. Computed as the max of
/// (n + 1)/m - 5/8 over the remaining truncated support (plus the truncation
/// allowance for monomials beyond the cap).
pub fn depth_delta(pair: &SignedPolyPair, y_cap: i64) -> f64 {
    let mut delta: f64 = 1.0 / y_cap as f64;
    for (m, n) in pair
        .w_plus
        .terms()
        .map(|(k, _)| *k)
        .chain(pair.w_minus.terms().map(|(k, _)| *k))
    {
        if m == 0 {
            continue;
        }
        delta = delta.max((n as f64 + 1.0) / m as f64 - 0.625);
    }
    delta
}
