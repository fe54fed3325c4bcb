//! Hodge star on `ΛⁿU` for a diagonal Hermitian form on `U = E^{2n}`,
//! `E = E₀(√−e)`.
//!
//! Basis vectors of `ΛⁿU` are the `n`-subsets of `0..2n` in lexicographic
//! order. The star is defined by `ψ̃(w₁, w₂)·ω = w₁ ∧ ⋆w₂` and is anti-linear.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{q, ExactError, Field, Matrix, QuadBase, QuadScalar, Rational};

/// Largest supported `n` (so `dim U ≤ 8`).
pub const MAX_N: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarError {
    #[error("subset of size {got}, expected {expected}")]
    BadSubset { got: usize, expected: usize },
    #[error("n = {0} outside 1..={MAX_N}")]
    BadN(usize),
    #[error("expected {expected} diagonal entries, got {got}")]
    BadDiagonal { got: usize, expected: usize },
    #[error("diagonal entry {0} is zero")]
    ZeroEntry(usize),
    #[error("−{0} must be a non-square so that E is a field")]
    BadRadicand(i64),
    #[error("element is not unitary with determinant one")]
    NotUnitary,
    #[error("star squared is not a scalar")]
    NonScalar,
    #[error("star squared is {got}, expected {expected}")]
    LawViolation { got: String, expected: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Element of `E = E₀(√−e)`.
pub type Ext<F> = QuadScalar<F>;

/// `U = E^{2n}` with `ψ = diag(a₁, …, a_{2n})`, `aᵢ ∈ E₀`.
#[derive(Clone, Debug)]
pub struct HermitianDiagSpace<F: QuadBase> {
    n: usize,
    diag: Vec<F>,
    e: i64,
    volume: Ext<F>,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// Sign of the permutation listing `first` then `second`.
pub fn concat_sign(first: &[usize], second: &[usize]) -> i32 {
    let inversions = first
        .iter()
        .map(|a| second.iter().filter(|b| *b < a).count())
        .sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<F: QuadBase> HermitianDiagSpace<F> {
    pub fn new(n: usize, diag: Vec<F>, e: i64) -> Result<Self, StarError> {
        if n == 0 || n > MAX_N {
            return Err(StarError::BadN(n));
        }
        if diag.len() != 2 * n {
            return Err(StarError::BadDiagonal {
                got: diag.len(),
                expected: 2 * n,
            });
        }
        if let Some(i) = diag.iter().position(Zero::is_zero) {
            return Err(StarError::ZeroEntry(i));
        }
        Ext::<F>::sqrt(-e).map_err(|_| StarError::BadRadicand(e))?;
        let subsets: Vec<Vec<usize>> = (0..2 * n).combinations(n).collect();
        let index = subsets.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        Ok(Self {
            n,
            diag,
            e,
            volume: Ext::one(),
            subsets,
            index,
        })
    }

    /// Same form with volume form `c·e₁ ∧ … ∧ e_{2n}`.
    pub fn with_volume(mut self, c: Ext<F>) -> Self {
        self.volume = c;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn diag(&self) -> &[F] {
        &self.diag
    }

    /// `dim ΛⁿU`.
    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// `√−e`.
    pub fn sqrt_minus_e(&self) -> Ext<F> {
        Ext::<F>::sqrt(-self.e).expect("checked at construction")
    }

    /// `disc(ψ) = Π aᵢ`.
    pub fn disc(&self) -> F {
        self.diag.iter().fold(F::one(), |acc, a| acc * a.clone())
    }

    /// `(−1)ⁿ·disc(ψ)`.
    pub fn expected_square(&self) -> F {
        let d = self.disc();
        if self.n.is_multiple_of(2) {
            d
        } else {
            -d
        }
    }

    fn check_subset(&self, s: &[usize]) -> Result<usize, StarError> {
        self.index.get(s).copied().ok_or(StarError::BadSubset {
            got: s.len(),
            expected: self.n,
        })
    }

    /// `ψ̃(e_I, e_J) = det(ψ(e_i, e_j))_{i∈I, j∈J}`.
    pub fn induced_hermitian(&self, i: &[usize], j: &[usize]) -> Result<F, StarError> {
        self.check_subset(i)?;
        self.check_subset(j)?;
        let rows = i
            .iter()
            .map(|&r| {
                j.iter()
                    .map(|&c| if r == c { self.diag[r].clone() } else { F::zero() })
                    .collect()
            })
            .collect();
        Ok(Matrix::from_rows(rows)?.det()?)
    }

    /// `⋆e_I = ε_{I,I′}·a_I·e_{I′}` as `(ε, a_I, I′)`, before the volume factor.
    pub fn star_basis(&self, i: &[usize]) -> Result<(i32, F, Vec<usize>), StarError> {
        self.check_subset(i)?;
        let comp: Vec<usize> = (0..2 * self.n).filter(|k| !i.contains(k)).collect();
        let a = i.iter().fold(F::one(), |acc, &k| acc * self.diag[k].clone());
        Ok((concat_sign(i, &comp), a, comp))
    }

    /// Basis vector `e_I`.
    pub fn basis_vector(&self, i: &[usize]) -> Result<Vec<Ext<F>>, StarError> {
        let k = self.check_subset(i)?;
        let mut v = vec![Ext::zero(); self.dim()];
        v[k] = Ext::one();
        Ok(v)
    }

    /// Anti-linear star on a vector of coordinates.
    pub fn star(&self, w: &[Ext<F>]) -> Vec<Ext<F>> {
        let mut out = vec![Ext::zero(); self.dim()];
        for (k, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (eps, a, comp) = self.star_basis(&self.subsets[k]).expect("valid subset");
            let coeff = Ext::from_base(a) * Ext::from_rational(&q(eps.into()));
            out[self.index[&comp]] = out[self.index[&comp]].clone() + c.conj() * coeff * self.volume.clone();
        }
        out
    }

    /// `w₁ ∧ w₂` for `w₁, w₂ ∈ ΛⁿU`, as a multiple of `e₁ ∧ … ∧ e_{2n}`.
    pub fn wedge_top(&self, w1: &[Ext<F>], w2: &[Ext<F>]) -> Ext<F> {
        let mut acc = Ext::zero();
        for (k1, c1) in w1.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            let s1 = &self.subsets[k1];
            let comp: Vec<usize> = (0..2 * self.n).filter(|x| !s1.contains(x)).collect();
            let c2 = &w2[self.index[&comp]];
            if c2.is_zero() {
                continue;
            }
            let eps = Ext::from_rational(&q(concat_sign(s1, &comp).into()));
            acc = acc + c1.clone() * c2.clone() * eps;
        }
        acc
    }

    /// Checks `ψ̃(e_I, e_J)·ω = e_I ∧ ⋆e_J` on every basis pair.
    pub fn defining_identity_holds(&self) -> bool {
        self.subsets.iter().all(|i| {
            self.subsets.iter().all(|j| {
                let lhs = Ext::from_base(self.induced_hermitian(i, j).expect("valid"))
                    * self.volume.clone();
                let ei = self.basis_vector(i).expect("valid");
                let ej = self.basis_vector(j).expect("valid");
                lhs == self.wedge_top(&ei, &self.star(&ej))
            })
        })
    }

    /// The scalar `c` with `⋆⋆ = c·id`, checked on every basis element and
    /// against `norm(vol)·(−1)ⁿ·disc(ψ)`.
    pub fn star_square(&self) -> Result<Ext<F>, StarError> {
        let mut scalar: Option<Ext<F>> = None;
        for s in &self.subsets {
            let e = self.basis_vector(s)?;
            let img = self.star(&self.star(&e));
            let k = self.index[s];
            if img.iter().enumerate().any(|(t, x)| t != k && !x.is_zero()) {
                return Err(StarError::NonScalar);
            }
            match &scalar {
                None => scalar = Some(img[k].clone()),
                Some(c) if *c != img[k] => return Err(StarError::NonScalar),
                _ => {}
            }
        }
        let got = scalar.expect("ΛⁿU is nonzero");
        let expected = Ext::from_base(self.volume.norm() * self.expected_square());
        if got != expected {
            return Err(StarError::LawViolation {
                got: got.to_string(),
                expected: expected.to_string(),
            });
        }
        Ok(got)
    }

    /// Action of `g = diag(g₁, …, g_{2n})` on `ΛⁿU`.
    pub fn act(&self, g: &[Ext<F>], w: &[Ext<F>]) -> Vec<Ext<F>> {
        w.iter()
            .zip(&self.subsets)
            .map(|(c, s)| s.iter().fold(c.clone(), |acc, &k| acc * g[k].clone()))
            .collect()
    }

    fn check_unitary(&self, g: &[Ext<F>]) -> Result<(), StarError> {
        if g.len() != 2 * self.n {
            return Err(StarError::NotUnitary);
        }
        let det = g.iter().fold(Ext::one(), |acc, x| acc * x.clone());
        if g.iter().any(|x| !x.norm().is_one()) || !det.is_one() {
            return Err(StarError::NotUnitary);
        }
        Ok(())
    }

    /// True iff `⋆ ∘ g = g ∘ ⋆` on every basis element, for a diagonal
    /// unitary `g` of determinant one.
    pub fn equivariance_sample(&self, g: &[Ext<F>]) -> Result<bool, StarError> {
        self.check_unitary(g)?;
        Ok(self.subsets.iter().all(|s| {
            let e = self.basis_vector(s).expect("valid");
            self.star(&self.act(g, &e)) == self.act(g, &self.star(&e))
        }))
    }
}

/// `u = (x + y√−e)/(x − y√−e)`, a norm-one element of `E`.
pub fn norm_one<F: QuadBase>(x: i64, y: i64, e: i64) -> Result<Ext<F>, StarError> {
    let s = Ext::<F>::sqrt(-e)?;
    let xr = Ext::from_rational(&q(x));
    let yr = Ext::from_rational(&q(y));
    let num = xr.clone() + yr.clone() * s.clone();
    let den = xr - yr * s;
    let inv = den.inv().ok_or(StarError::NotUnitary)?;
    Ok(num * inv)
}

/// Verdict on whether `End` of the representation is a matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraType {
    Matrix,
    Division,
    Unknown,
}

impl AlgebraType {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Matrix => "matrix",
            Self::Division => "division",
            Self::Unknown => "unknown",
        }
    }
}

fn is_square_int(n: &num_bigint::BigInt) -> bool {
    use num_bigint::Sign;
    match n.sign() {
        Sign::Minus => false,
        Sign::NoSign => true,
        Sign::Plus => {
            let r = n.sqrt();
            &r * &r == *n
        }
    }
}

/// True iff `c` is the square of a rational.
pub fn is_rational_square(c: &Rational) -> bool {
    is_square_int(c.numer()) && is_square_int(c.denom())
}

/// Searches `x² + e·y² = c·z²` with `0 < z ≤ bound`, `|x|, |y| ≤ bound`.
pub fn find_norm_representation(c: &Rational, e: i64, bound: i64) -> Option<(i64, i64, i64)> {
    let num = c.numer().to_i128()?;
    let den = c.denom().to_i128()?;
    let e = e as i128;
    for z in 1..=bound as i128 {
        // x² + e y² = (num/den) z²  ⇔  den(x² + e y²) = num z².
        let rhs = num * z * z;
        for x in 0..=bound as i128 {
            let rest = rhs - den * x * x;
            if e == 0 || rest % (den * e) != 0 {
                continue;
            }
            let y2 = rest / (den * e);
            if y2 < 0 {
                continue;
            }
            let y = (y2 as f64).sqrt().round() as i128;
            for yy in [y - 1, y, y + 1] {
                if yy >= 0 && yy * yy == y2 && yy <= bound as i128 {
                    return Some((x as i64, yy as i64, z as i64));
                }
            }
        }
    }
    None
}

/// Decides whether `(−1)ⁿ·disc(ψ)` is a norm from `ℚ(√−e)`: squares and
/// bounded searches give "matrix", the sign obstruction gives "division".
pub fn algebra_type(s: &HermitianDiagSpace<Rational>, bound: i64) -> AlgebraType {
    let c = s.expected_square();
    if is_rational_square(&c) {
        return AlgebraType::Matrix;
    }
    if s.e() > 0 && c.is_negative() {
        return AlgebraType::Division;
    }
    if find_norm_representation(&c, s.e(), bound).is_some() {
        return AlgebraType::Matrix;
    }
    AlgebraType::Unknown
}

/// Default height bound for [`algebra_type`].
pub const DEFAULT_HEIGHT: i64 = 50;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qf;

    fn space(n: usize, d: &[i64], e: i64) -> HermitianDiagSpace<Rational> {
        HermitianDiagSpace::new(n, d.iter().map(|&x| q(x)).collect(), e).unwrap()
    }

    #[test]
    fn induced_form() {
        let s = space(1, &[1, -1], 1);
        assert_eq!(s.induced_hermitian(&[0], &[0]).unwrap(), q(1));
        assert_eq!(s.induced_hermitian(&[1], &[1]).unwrap(), q(-1));
        let s = space(2, &[2, 3, 5, 7], 2);
        assert_eq!(s.induced_hermitian(&[1, 3], &[1, 3]).unwrap(), q(21));
        assert_eq!(s.induced_hermitian(&[0, 3], &[1, 3]).unwrap(), q(0));
        assert!(s.induced_hermitian(&[0], &[1]).is_err());
    }

    #[test]
    fn star_examples() {
        let s = space(1, &[1, -1], 1);
        assert_eq!(s.star(&s.basis_vector(&[0]).unwrap()), s.basis_vector(&[1]).unwrap());
        assert_eq!(s.star(&s.basis_vector(&[1]).unwrap()), s.basis_vector(&[0]).unwrap());
        let s = space(2, &[1, 1, 1, 1], 1);
        assert_eq!(s.star(&s.basis_vector(&[0, 1]).unwrap()), s.basis_vector(&[2, 3]).unwrap());
        assert!(s.defining_identity_holds());
        assert!(space(3, &[1, 2, -3, 1, 5, -1], 7).defining_identity_holds());
    }

    #[test]
    fn star_square_values() {
        assert_eq!(space(1, &[1, -1], 1).star_square().unwrap(), Ext::one());
        assert_eq!(space(2, &[1, 1, 1, 1], 3).star_square().unwrap(), Ext::one());
        assert_eq!(space(3, &[1, 1, 1, -1, -1, -1], 1).star_square().unwrap(), Ext::one());
        let delta = QuadScalar::<Rational>::sqrt(2).unwrap();
        let one = QuadScalar::from_rational(&q(1));
        let d = vec![
            one.clone(),
            delta.clone(),
            delta.clone(),
            -one.clone(),
            -one.clone(),
            -one,
        ];
        let s = HermitianDiagSpace::new(3, d, 1).unwrap();
        let sq = s.star_square().unwrap();
        assert_eq!(sq, Ext::from_base(delta.clone() * delta));
    }

    #[test]
    fn anti_linearity_and_volume() {
        let s = space(2, &[1, -2, 3, 5], 3);
        let alpha = Ext::new(qf(2, 3), q(-5), -3).unwrap();
        let w: Vec<Ext<Rational>> = (0..s.dim()).map(|k| Ext::new(q(k as i64), q(1), -3).unwrap()).collect();
        let scaled: Vec<_> = w.iter().map(|x| alpha.clone() * x.clone()).collect();
        let lhs = s.star(&scaled);
        let rhs: Vec<_> = s.star(&w).into_iter().map(|x| alpha.conj() * x).collect();
        assert_eq!(lhs, rhs);
        let c = Ext::new(q(1), q(2), -3).unwrap();
        let sc = s.clone().with_volume(c.clone());
        assert_eq!(sc.star(&w), s.star(&w).into_iter().map(|x| c.clone() * x).collect::<Vec<_>>());
        assert_eq!(sc.star_square().unwrap(), Ext::from_base(c.norm()) * s.star_square().unwrap());
    }

    #[test]
    fn equivariance() {
        let s = space(2, &[1, 2, -1, 3], 2);
        let id = vec![Ext::one(); 4];
        assert!(s.equivariance_sample(&id).unwrap());
        let u = norm_one::<Rational>(1, 3, 2).unwrap();
        let g = vec![u.clone(), u.inv().unwrap(), Ext::one(), Ext::one()];
        assert!(s.equivariance_sample(&g).unwrap());
        let v = norm_one::<Rational>(2, 1, 2).unwrap();
        let g = vec![u.clone(), v.clone(), u.inv().unwrap(), v.inv().unwrap()];
        assert!(s.equivariance_sample(&g).unwrap());
        let bad = vec![Ext::from_rational(&q(2)), Ext::from_rational(&qf(1, 2)), Ext::one(), Ext::one()];
        assert_eq!(s.equivariance_sample(&bad), Err(StarError::NotUnitary));
    }

    #[test]
    fn conjugate_action_does_not_commute() {
        let s = space(1, &[1, 1], 1);
        let u = norm_one::<Rational>(1, 2, 1).unwrap();
        let g = vec![u.clone(), u.inv().unwrap()];
        let gbar: Vec<_> = g.iter().map(Field::conj).collect();
        let e = s.basis_vector(&[0]).unwrap();
        assert_ne!(s.star(&s.act(&g, &e)), s.act(&gbar, &s.star(&e)));
    }

    #[test]
    fn algebra_types() {
        assert_eq!(algebra_type(&space(3, &[1, 1, 1, -1, -1, -1], 1), DEFAULT_HEIGHT), AlgebraType::Matrix);
        assert_eq!(algebra_type(&space(1, &[1, 1], 1), DEFAULT_HEIGHT), AlgebraType::Division);
        // −disc = 5 = 1² + 1·2²
        assert_eq!(algebra_type(&space(1, &[1, -5], 1), DEFAULT_HEIGHT), AlgebraType::Matrix);
        // 3 is not a sum of two rational squares
        assert_eq!(algebra_type(&space(1, &[1, -3], 1), DEFAULT_HEIGHT), AlgebraType::Unknown);
        assert_eq!(find_norm_representation(&q(7), 3, 10).map(|(x, y, z)| x * x + 3 * y * y - 7 * z * z), Some(0));
    }

    #[test]
    fn errors() {
        assert_eq!(HermitianDiagSpace::new(5, vec![q(1); 10], 1).unwrap_err(), StarError::BadN(5));
        assert!(matches!(HermitianDiagSpace::new(1, vec![q(1), q(0)], 1), Err(StarError::ZeroEntry(1))));
        assert!(matches!(HermitianDiagSpace::new(1, vec![q(1), q(1)], -4), Err(StarError::BadRadicand(-4))));
    }
}
