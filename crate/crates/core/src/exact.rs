//! Exact arithmetic: rationals, the quadratic field Q(√D) with D = N(N−4),
//! and the Bejaia/Pisa integer sequences.
//!
//! For odd N ≥ 5 the fundamental unit is φ = (N−2+√D)/2 with conjugate
//! φ̄ = (N−2−√D)/2 and φφ̄ = 1. Its powers split as
//!
//! ```text
//! φ^l = (P_l + B_l·√D) / 2
//! ```
//!
//! where B (Bejaia) and P (Pisa) both obey x_l = (N−2)x_{l−1} − x_{l−2}
//! with B₀ = 0, B₁ = 1 and P₀ = 2, P₁ = N−2. For N = 5 they are the
//! bisected Fibonacci and Lucas numbers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction over unbounded integers, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Formats a rational as `p/q`, including `q = 1`.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn is_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &(&r * &r) == v
}

/// Element a + b·√D of Q(√D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    a: Rational,
    b: Rational,
    radicand: BigInt,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, radicand: BigInt) -> Result<Self> {
        if !radicand.is_positive() || is_square(&radicand) {
            return Err(Error::BadRadicand(radicand));
        }
        Ok(Self { a, b, radicand })
    }

    pub fn one(radicand: BigInt) -> Result<Self> {
        Self::new(Rational::one(), Rational::zero(), radicand)
    }

    /// The element √D itself.
    pub fn root(radicand: BigInt) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), radicand)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm a² − D·b².
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.radicand.clone())
    }

    /// Product in Q(√D); fails if the radicands differ.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.radicand != rhs.radicand {
            return Err(Error::RadicandMismatch(
                self.radicand.clone(),
                rhs.radicand.clone(),
            ));
        }
        Ok(self.mul_same_field(rhs))
    }

    fn mul_same_field(&self, rhs: &Self) -> Self {
        let d = Rational::from_integer(self.radicand.clone());
        Self {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            radicand: self.radicand.clone(),
        }
    }

    /// x^k by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self {
            a: Rational::one(),
            b: Rational::zero(),
            radicand: self.radicand.clone(),
        };
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_same_field(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_same_field(&base);
            }
        }
        result
    }

    pub fn to_f64(&self) -> f64 {
        let root = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * root
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}·√{}",
            fraction_string(&self.a),
            fraction_string(&self.b),
            self.radicand
        )
    }
}

/// Validated odd order N ≥ 5 together with its radicand D = N(N−4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceContext {
    n: u64,
    radicand: BigInt,
}

impl SequenceContext {
    pub fn new(n: u64) -> Result<Self> {
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::InvalidOrder(n));
        }
        let radicand = BigInt::from(n) * BigInt::from(n - 4);
        Ok(Self { n, radicand })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// φ = (N−2+√D)/2.
    pub fn fundamental_unit(&self) -> QuadElem {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        QuadElem {
            a: Rational::from_integer(BigInt::from(self.n - 2)) * &half,
            b: half,
            radicand: self.radicand.clone(),
        }
    }

    /// B_l by the linear recursion.
    pub fn bejaia(&self, l: u64) -> BigInt {
        self.run_recursion(BigInt::zero(), BigInt::one(), l)
    }

    /// P_l by the linear recursion.
    pub fn pisa(&self, l: u64) -> BigInt {
        self.run_recursion(BigInt::from(2), BigInt::from(self.n - 2), l)
    }

    /// B at a signed index, with B_{−k} = −B_k.
    pub fn bejaia_signed(&self, l: i64) -> BigInt {
        let b = self.bejaia(l.unsigned_abs());
        if l < 0 {
            -b
        } else {
            b
        }
    }

    /// P at a signed index, with P_{−k} = P_k.
    pub fn pisa_signed(&self, l: i64) -> BigInt {
        self.pisa(l.unsigned_abs())
    }

    /// (B_l, P_l) read off from φ^l = (P_l + B_l√D)/2.
    pub fn binet_pair(&self, l: u64) -> (BigInt, BigInt) {
        let p = self.fundamental_unit().pow(l);
        let two = Rational::from_integer(BigInt::from(2));
        let b = &p.b * &two;
        let a = &p.a * &two;
        debug_assert!(b.is_integer() && a.is_integer());
        (b.to_integer(), a.to_integer())
    }

    /// B_0..B_{count-1}.
    pub fn bejaia_terms(&self, count: usize) -> Vec<BigInt> {
        self.terms(BigInt::zero(), BigInt::one(), count)
    }

    /// P_0..P_{count-1}.
    pub fn pisa_terms(&self, count: usize) -> Vec<BigInt> {
        self.terms(BigInt::from(2), BigInt::from(self.n - 2), count)
    }

    fn terms(&self, x0: BigInt, x1: BigInt, count: usize) -> Vec<BigInt> {
        let trace = BigInt::from(self.n - 2);
        let mut out = Vec::with_capacity(count);
        if count > 0 {
            out.push(x0);
        }
        if count > 1 {
            out.push(x1);
        }
        while out.len() < count {
            let k = out.len();
            let next = &trace * &out[k - 1] - &out[k - 2];
            out.push(next);
        }
        out
    }

    fn run_recursion(&self, x0: BigInt, x1: BigInt, l: u64) -> BigInt {
        if l == 0 {
            return x0;
        }
        let trace = BigInt::from(self.n - 2);
        let (mut prev, mut cur) = (x0, x1);
        for _ in 1..l {
            let next = &trace * &cur - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// D·B_N/(P_N+2), the rationalized form of √D·(1−φ̄^N)/(1+φ̄^N).
    pub fn radical_factor(&self) -> Rational {
        let b_n = self.bejaia(self.n);
        let p_n = self.pisa(self.n);
        Rational::new(&self.radicand * b_n, p_n + 2)
    }

    /// Σ_{l=1}^{n} B_{2l}, evaluated directly and as (P_{2n+1} − P₁)/D.
    pub fn sum_bejaia_even(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::NonPositive("n"));
        }
        let b = self.bejaia_terms(2 * n as usize + 1);
        let direct: BigInt = (1..=n as usize).map(|l| &b[2 * l]).sum();
        let closed = Rational::new(self.pisa(2 * n + 1) - self.pisa(1), self.radicand.clone());
        let direct = Rational::from_integer(direct);
        if direct != closed {
            return Err(Error::IdentityViolation(format!(
                "Σ B_2l for N={}, n={n}: direct {direct} ≠ closed {closed}",
                self.n
            )));
        }
        Ok(closed)
    }

    /// Σ_{l=1}^{n} B_l², evaluated directly and as (B_{2n+1} − B₁ − 2n)/D.
    pub fn sum_bejaia_squares(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::NonPositive("n"));
        }
        let b = self.bejaia_terms(2 * n as usize + 2);
        let direct: BigInt = (1..=n as usize).map(|l| &b[l] * &b[l]).sum();
        let closed = Rational::new(
            &b[2 * n as usize + 1] - &b[1] - BigInt::from(2 * n),
            self.radicand.clone(),
        );
        let direct = Rational::from_integer(direct);
        if direct != closed {
            return Err(Error::IdentityViolation(format!(
                "Σ B_l² for N={}, n={n}: direct {direct} ≠ closed {closed}",
                self.n
            )));
        }
        Ok(closed)
    }
}
