//! Sparse multivariate polynomials over an exact ring.
//!
//! Terms live in a map from exponent vector to nonzero coefficient. The zero
//! and one constants built through `num_traits` have zero variables and are
//! padded when combined with polynomials in more variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{q, Field, Rational, Ring};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug)]
pub struct SparsePoly<R> {
    nvars: usize,
    terms: BTreeMap<Exponent, R>,
}

impl<R: Ring> SparsePoly<R> {
    /// The zero polynomial in `nvars` variables.
    pub fn zero_in(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Constant polynomial.
    pub fn constant(nvars: usize, c: R) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The constant 1 in `nvars` variables.
    pub fn one_in(nvars: usize) -> Self {
        Self::constant(nvars, R::one())
    }

    /// The variable `z_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, R::one())
    }

    /// Single term `c · z^exp`.
    pub fn monomial(nvars: usize, exp: Exponent, c: R) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must equal nvars");
        let mut p = Self::zero_in(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, R)>) -> Self {
        let mut p = Self::zero_in(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `z^exp` (zero if absent).
    pub fn coeff(&self, exp: &[u32]) -> R {
        self.terms.get(exp).cloned().unwrap_or_else(R::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True iff every term has total degree `d` (the zero polynomial qualifies).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Re-expresses a constant in `nvars` variables; identity otherwise.
    pub fn padded(&self, nvars: usize) -> Self {
        if self.nvars == nvars {
            return self.clone();
        }
        assert!(
            self.nvars == 0,
            "cannot combine polynomials in {} and {} variables",
            self.nvars,
            nvars
        );
        let mut p = Self::zero_in(nvars);
        if let Some(c) = self.terms.get(&Vec::new()) {
            p.terms.insert(vec![0; nvars], c.clone());
        }
        p
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.nvars.max(b.nvars);
        (a.padded(n), b.padded(n))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())),
        )
    }

    /// Partial derivative with respect to `z_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero_in(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(e2, c.clone() * small_int::<R>(k as i64));
        }
        p
    }

    /// Evaluates at a point of the same ring.
    pub fn eval(&self, point: &[R]) -> R {
        self.eval_with(point, |c| c.clone())
    }

    /// Evaluates at a point of another ring, lifting coefficients with `lift`.
    pub fn eval_with<S: Ring>(&self, point: &[S], lift: impl Fn(&R) -> S) -> S {
        assert_eq!(point.len(), self.nvars, "point has wrong dimension");
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Substitutes polynomials (all in the same variables) for each variable.
    pub fn substitute(&self, images: &[SparsePoly<R>]) -> SparsePoly<R> {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.iter().map(|p| p.nvars).max().unwrap_or(0);
        let images: Vec<_> = images.iter().map(|p| p.padded(target)).collect();
        let mut out = Self::zero_in(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                for _ in 0..k {
                    t = t * img.clone();
                }
            }
            out = out + t;
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparsePoly<S> {
        SparsePoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Coefficients `c_0, …, c_d` of a univariate polynomial (lowest first).
    pub fn univariate_coeffs(&self) -> Vec<R> {
        assert_eq!(self.nvars, 1, "not a univariate polynomial");
        let d = self.degree().unwrap_or(0) as usize;
        (0..=d).map(|k| self.coeff(&[k as u32])).collect()
    }

    /// Univariate polynomial from coefficients (lowest first).
    pub fn from_univariate(coeffs: &[R]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (vec![k as u32], c.clone())),
        )
    }
}

impl<F: Field> SparsePoly<F> {
    /// Lifts a rational polynomial into the field `F`.
    pub fn from_rational_poly(p: &SparsePoly<Rational>) -> Self {
        p.map_coeffs(F::from_rational)
    }
}

/// Integer `k` as a ring element, by repeated addition.
pub fn small_int<R: Ring>(k: i64) -> R {
    let mut acc = R::zero();
    for _ in 0..k.unsigned_abs() {
        acc = acc + R::one();
    }
    if k < 0 {
        -acc
    } else {
        acc
    }
}

impl<R: Ring> PartialEq for SparsePoly<R> {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.is_empty() && other.terms.is_empty() {
            return true;
        }
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        if self.nvars == 0 || other.nvars == 0 {
            let (a, b) = Self::aligned(self, other);
            return a.terms == b.terms;
        }
        false
    }
}

impl<R: Ring> Add for SparsePoly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut a, b) = if self.nvars == o.nvars {
            (self, o)
        } else {
            Self::aligned(&self, &o)
        };
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl<R: Ring> Sub for SparsePoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Neg for SparsePoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Ring> Mul for SparsePoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = if self.nvars == o.nvars {
            (self, o)
        } else {
            Self::aligned(&self, &o)
        };
        let mut p = Self::zero_in(a.nvars);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<R: Ring> Zero for SparsePoly<R> {
    fn zero() -> Self {
        Self::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for SparsePoly<R> {
    fn one() -> Self {
        Self::constant(0, R::one())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for SparsePoly<R> {
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
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·z{}", i + 1)?,
                    _ => write!(f, "·z{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

/// Rational polynomial helper: `Σ c·z^e` from integer data.
pub fn rational_poly(nvars: usize, terms: &[(&[u32], i64)]) -> SparsePoly<Rational> {
    SparsePoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), q(*c))))
}
