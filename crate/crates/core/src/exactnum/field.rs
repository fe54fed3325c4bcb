//! Scalar traits shared by polynomials, matrices and symplectic vectors.

use std::fmt::Debug;
use std::ops::{Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Field with an involutive conjugation (identity on real fields).
pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Conjugation; the identity on the rationals.
    fn conj(&self) -> Self;
    /// Canonical embedding of the rationals.
    fn from_rational(q: &Rational) -> Self;
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| ExactError::Parse(s.to_string()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| ExactError::Parse(s.to_string()))?;
        if d.is_zero() {
            return Err(ExactError::Parse(s.to_string()));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|_| ExactError::Parse(s.to_string()))?;
        Ok(Rational::from_integer(n))
    }
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

/// Sign as -1, 0 or 1.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ExactError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// True iff `|m|` has no square factor and `m ∉ {0, 1}`.
pub fn is_valid_radicand(m: i64) -> bool {
    if m == 0 || m == 1 {
        return false;
    }
    let mut n = m.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Writes a nonzero integer as `s² · m` with `m` square-free (sign kept in `m`).
pub fn squarefree_decompose(n: i64) -> (i64, i64) {
    assert!(n != 0, "zero has no square-free part");
    let mut rest = n.unsigned_abs();
    let mut s = 1i64;
    let mut m = 1i64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            s *= p as i64;
        }
        if rest.is_multiple_of(p) {
            rest /= p;
            m *= p as i64;
        }
        p += 1;
    }
    m *= rest as i64;
    (s, if n < 0 { -m } else { m })
}
