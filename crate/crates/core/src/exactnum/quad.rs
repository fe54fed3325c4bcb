//! Quadratic extensions `F(√m)` of the rationals and of one quadratic field.
//!
//! The radicand travels with the value. Constants produced by `zero()` and
//! `one()` carry the placeholder radicand 0 and adopt the radicand of whatever
//! they are combined with.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::field::{fmt_rational, is_valid_radicand, parse_rational, q, Field, Rational};
use super::ExactError;

/// Base fields a quadratic extension may be built over. Implemented only for
/// `Rational` and `QuadScalar<Rational>`, which caps towers at depth two.
pub trait QuadBase: Field + JsonScalar + fmt::Display {
    /// Radicand of the base itself (0 for the rationals).
    fn base_radicand(&self) -> i64;
}

impl QuadBase for Rational {
    fn base_radicand(&self) -> i64 {
        0
    }
}

impl QuadBase for QuadScalar<Rational> {
    fn base_radicand(&self) -> i64 {
        self.radicand()
    }
}

/// `a + b√m` with `a, b` in the base field.
#[derive(Clone, Debug)]
pub struct QuadScalar<F> {
    a: F,
    b: F,
    m: i64,
}

/// Gaussian rational `a + b√−1`.
pub type Gaussian = QuadScalar<Rational>;

impl<F: QuadBase> QuadScalar<F> {
    /// Builds `a + b√m`, checking the radicand.
    pub fn new(a: F, b: F, m: i64) -> Result<Self, ExactError> {
        if !is_valid_radicand(m) {
            return Err(ExactError::BadRadicand(m));
        }
        let inner = match a.base_radicand() {
            0 => b.base_radicand(),
            r => r,
        };
        if inner != 0 && inner == m {
            return Err(ExactError::BadRadicand(m));
        }
        Ok(Self { a, b, m })
    }

    /// Embeds a base element (no radicand attached yet).
    pub fn from_base(a: F) -> Self {
        Self {
            a,
            b: F::zero(),
            m: 0,
        }
    }

    /// Embeds a base element into the field with radicand `m`.
    pub fn from_base_in(a: F, m: i64) -> Result<Self, ExactError> {
        Self::new(a, F::zero(), m)
    }

    /// `√m` itself.
    pub fn sqrt(m: i64) -> Result<Self, ExactError> {
        Self::new(F::zero(), F::one(), m)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    /// Radicand, 0 if none has been attached.
    pub fn radicand(&self) -> i64 {
        self.m
    }

    /// `x · conj(x) = a² − m b²`, an element of the base.
    pub fn norm(&self) -> F {
        let m = F::from_rational(&q(self.m));
        self.a.clone() * self.a.clone() - m * self.b.clone() * self.b.clone()
    }

    fn effective_radicand(&self) -> i64 {
        if self.b.is_zero() {
            0
        } else {
            self.m
        }
    }

    fn merged_radicand(&self, other: &Self) -> i64 {
        match (self.effective_radicand(), other.effective_radicand()) {
            (0, 0) => {
                if self.m != 0 {
                    self.m
                } else {
                    other.m
                }
            }
            (0, e) | (e, 0) => e,
            (e1, e2) => {
                assert_eq!(e1, e2, "arithmetic across different quadratic fields");
                e1
            }
        }
    }
}

impl QuadScalar<Rational> {
    /// Gaussian rational `re + im·i`.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self { a: re, b: im, m: -1 }
    }

    /// Real part, valid when the radicand is negative.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `√m`.
    pub fn im_coeff(&self) -> &Rational {
        &self.b
    }
}

impl<F: QuadBase> PartialEq for QuadScalar<F> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && (self.b.is_zero() || self.m == other.m)
    }
}

impl<F: QuadBase> Add for QuadScalar<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let m = self.merged_radicand(&o);
        Self {
            a: self.a + o.a,
            b: self.b + o.b,
            m,
        }
    }
}

impl<F: QuadBase> Sub for QuadScalar<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let m = self.merged_radicand(&o);
        Self {
            a: self.a - o.a,
            b: self.b - o.b,
            m,
        }
    }
}

impl<F: QuadBase> Mul for QuadScalar<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = self.merged_radicand(&o);
        let mm = F::from_rational(&q(m));
        let a = self.a.clone() * o.a.clone() + mm * self.b.clone() * o.b.clone();
        let b = self.a * o.b + self.b * o.a;
        Self { a, b, m }
    }
}

impl<F: QuadBase> Neg for QuadScalar<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl<F: QuadBase> Zero for QuadScalar<F> {
    fn zero() -> Self {
        Self::from_base(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<F: QuadBase> One for QuadScalar<F> {
    fn one() -> Self {
        Self::from_base(F::one())
    }
}

impl<F: QuadBase> Field for QuadScalar<F> {
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(Self {
            a: self.a.clone() * n.clone(),
            b: -(self.b.clone() * n),
            m: self.m,
        })
    }

    fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            m: self.m,
        }
    }

    fn from_rational(x: &Rational) -> Self {
        Self::from_base(F::from_rational(x))
    }
}

impl<F: QuadBase> fmt::Display for QuadScalar<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})·√{}", self.a, self.b, self.m)
        }
    }
}

/// JSON encoding: rationals as strings, quadratic elements as `{"a","b","m"}`.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ExactError>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(fmt_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(q(n.as_i64().unwrap_or_default())),
            _ => Err(ExactError::Parse(v.to_string())),
        }
    }
}

impl<F: QuadBase> JsonScalar for QuadScalar<F> {
    fn to_json(&self) -> Value {
        json!({"a": self.a.to_json(), "b": self.b.to_json(), "m": self.m})
    }

    fn from_json(v: &Value) -> Result<Self, ExactError> {
        if json_depth(v)? > 2 {
            return Err(ExactError::TowerTooDeep);
        }
        let obj = v.as_object().ok_or_else(|| ExactError::Parse(v.to_string()))?;
        let get = |k: &str| obj.get(k).ok_or_else(|| ExactError::Parse(v.to_string()));
        let a = F::from_json(get("a")?)?;
        let b = F::from_json(get("b")?)?;
        let m = get("m")?
            .as_i64()
            .ok_or_else(|| ExactError::Parse(v.to_string()))?;
        Self::new(a, b, m)
    }
}

/// Nesting depth of a JSON scalar: 0 for a rational string.
pub fn json_depth(v: &Value) -> Result<usize, ExactError> {
    match v {
        Value::String(_) | Value::Number(_) => Ok(0),
        Value::Object(o) => {
            let da = o.get("a").map(json_depth).transpose()?.unwrap_or(0);
            let db = o.get("b").map(json_depth).transpose()?.unwrap_or(0);
            Ok(1 + da.max(db))
        }
        _ => Err(ExactError::Parse(v.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::qf;

    fn g(a: i64, b: i64) -> Gaussian {
        Gaussian::gaussian(q(a), q(b))
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = g(0, 1);
        assert_eq!(i.clone() * i.clone(), g(-1, 0));
        assert_eq!((g(1, 2) * g(3, -1)), g(5, 5));
        assert_eq!(g(3, 4).norm(), q(25));
        let x = g(3, 4);
        assert_eq!(x.clone() * x.inv().unwrap(), Gaussian::one());
        assert_eq!(x.conj(), g(3, -4));
    }

    #[test]
    fn constants_adopt_radicand() {
        let s2 = QuadScalar::<Rational>::sqrt(2).unwrap();
        let two = s2.clone() * s2.clone();
        assert_eq!(two, QuadScalar::from_rational(&q(2)));
        let y = QuadScalar::<Rational>::one() + s2.clone();
        assert_eq!(y.radicand(), 2);
    }

    #[test]
    fn nested_tower() {
        type E0 = QuadScalar<Rational>;
        let d = E0::sqrt(3).unwrap();
        let i = QuadScalar::<E0>::sqrt(-1).unwrap();
        let x = QuadScalar::<E0>::new(d.clone(), E0::from_rational(&q(1)), -1).unwrap();
        assert_eq!(i.clone() * i, QuadScalar::from_rational(&q(-1)));
        let n = x.norm();
        assert_eq!(n, E0::from_rational(&q(4)));
        assert_eq!(x.clone() * x.inv().unwrap(), QuadScalar::one());
    }

    #[test]
    fn rejects_bad_radicands() {
        assert!(QuadScalar::<Rational>::sqrt(4).is_err());
        assert!(QuadScalar::<Rational>::sqrt(1).is_err());
        assert!(QuadScalar::<Rational>::sqrt(0).is_err());
    }

    #[test]
    fn json_round_trip_and_depth() {
        let x = Gaussian::gaussian(qf(1, 2), q(-3));
        let v = x.to_json();
        assert_eq!(v, json!({"a":"1/2","b":"-3","m":-1}));
        assert_eq!(Gaussian::from_json(&v).unwrap(), x);
        let deep = json!({"a":{"a":{"a":"1","b":"0","m":2},"b":"0","m":3},"b":"0","m":-1});
        assert!(matches!(
            QuadScalar::<QuadScalar<Rational>>::from_json(&deep),
            Err(ExactError::TowerTooDeep)
        ));
    }
}
