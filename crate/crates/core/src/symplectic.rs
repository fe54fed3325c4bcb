//! The symplectic space of dimension `2h+2` with basis `e₀,…,e_h,f₁,…,f_h,f₀`.
//!
//! Coordinates are stored in that order, so index `i` is `e_i` for `i ≤ h`,
//! index `h+j` is `f_j` for `1 ≤ j ≤ h`, and the last index is `f₀`.
//!
//! The complex basis `ε₀,…,ε_h,δ₁,…,δ_h,δ₀` reuses the same slots. Its
//! pairing is `⟨ε₀,δ₀⟩ = 2√−1`, `⟨ε_i,δ_i⟩ = −2√−1` for `1 ≤ i ≤ a` and
//! `+2√−1` for `i > a`. [`SympSpace::pair`] returns the pairing divided by
//! `2√−1` in that case, which keeps polynomial entries rational.

use thiserror::Error;

use crate::exactnum::{q, Field, Gaussian, Matrix, Rational, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SympError {
    #[error("vector of length {got} in a space of dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("complex basis needs a ≤ h (got a = {a}, h = {h})")]
    BadSplit { a: usize, h: usize },
}

/// Which Gram matrix the coordinates are paired with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gram {
    /// `⟨e_i, f_j⟩ = δ_ij`.
    Standard,
    /// The `ε/δ` basis with `a` negative pairs, scaled by `1/(2√−1)`.
    Complex { a: usize },
}

/// Coordinates in the fixed basis order.
pub type SympVector<R> = Vec<R>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SympSpace {
    h: usize,
    gram: Gram,
}

impl SympSpace {
    /// Standard space with `h` middle coordinates.
    pub fn new(h: usize) -> Self {
        Self {
            h,
            gram: Gram::Standard,
        }
    }

    /// The `ε/δ` basis with `a` free coordinates and `h − a` quadric slots.
    pub fn complex(h: usize, a: usize) -> Result<Self, SympError> {
        if a > h {
            return Err(SympError::BadSplit { a, h });
        }
        Ok(Self {
            h,
            gram: Gram::Complex { a },
        })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn gram(&self) -> Gram {
        self.gram
    }

    pub fn dim(&self) -> usize {
        2 * self.h + 2
    }

    /// Index of `e_i` (or `ε_i`), `0 ≤ i ≤ h`.
    pub fn e(&self, i: usize) -> usize {
        assert!(i <= self.h);
        i
    }

    /// Index of `f_i` (or `δ_i`), `0 ≤ i ≤ h`.
    pub fn f(&self, i: usize) -> usize {
        assert!(i <= self.h);
        if i == 0 {
            2 * self.h + 1
        } else {
            self.h + i
        }
    }

    /// Sign `g_i` of the pair `(e_i, f_i)`.
    pub fn pair_sign(&self, i: usize) -> i64 {
        match self.gram {
            Gram::Standard => 1,
            Gram::Complex { a } => {
                if i >= 1 && i <= a {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Unit coordinate vector.
    pub fn basis_vector<R: Ring>(&self, idx: usize) -> SympVector<R> {
        let mut v = vec![R::zero(); self.dim()];
        v[idx] = R::one();
        v
    }

    /// Gram matrix `J` (divided by `2√−1` for the complex basis).
    pub fn gram_matrix(&self) -> Matrix<Rational> {
        let mut j = Matrix::zeros(self.dim(), self.dim());
        for i in 0..=self.h {
            let g = q(self.pair_sign(i));
            j.set(self.e(i), self.f(i), g.clone());
            j.set(self.f(i), self.e(i), -g);
        }
        j
    }

    fn check_len(&self, n: usize) -> Result<(), SympError> {
        if n == self.dim() {
            Ok(())
        } else {
            Err(SympError::Dimension {
                expected: self.dim(),
                got: n,
            })
        }
    }

    /// `uᵀJv`; for the complex basis, the pairing divided by `2√−1`.
    pub fn pair<R: Ring>(&self, u: &[R], v: &[R]) -> Result<R, SympError> {
        self.check_len(u.len())?;
        self.check_len(v.len())?;
        let mut acc = R::zero();
        for i in 0..=self.h {
            let (e, f) = (self.e(i), self.f(i));
            let mut t = R::zero();
            if !u[e].is_zero() && !v[f].is_zero() {
                t = t + u[e].clone() * v[f].clone();
            }
            if !u[f].is_zero() && !v[e].is_zero() {
                t = t - u[f].clone() * v[e].clone();
            }
            acc = if self.pair_sign(i) < 0 { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    /// The actual pairing of Gaussian-rational vectors (restoring `2√−1`).
    pub fn pair_gaussian(&self, u: &[Gaussian], v: &[Gaussian]) -> Result<Gaussian, SympError> {
        let p = self.pair(u, v)?;
        Ok(match self.gram {
            Gram::Standard => p,
            Gram::Complex { .. } => p * Gaussian::gaussian(q(0), q(2)),
        })
    }

    /// True iff all pairwise pairings vanish.
    pub fn is_isotropic<R: Ring>(&self, vectors: &[SympVector<R>]) -> Result<bool, SympError> {
        for (i, u) in vectors.iter().enumerate() {
            self.check_len(u.len())?;
            for v in &vectors[i + 1..] {
                if !self.pair(u, v)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff `TᵀJT = J`.
    pub fn is_symplectic_matrix<F: Field>(&self, t: &Matrix<F>) -> Result<bool, SympError> {
        if t.rows() != self.dim() || t.cols() != self.dim() {
            return Err(SympError::Dimension {
                expected: self.dim(),
                got: t.rows().max(t.cols()),
            });
        }
        let j = self.gram_matrix().map(F::from_rational);
        Ok(t.transpose().matmul(&j).matmul(t) == j)
    }

    /// The scalar `c` with `TᵀJT = c·J`, if `T` is conformally symplectic.
    pub fn conformal_factor<F: Field>(&self, t: &Matrix<F>) -> Result<Option<F>, SympError> {
        if t.rows() != self.dim() || t.cols() != self.dim() {
            return Err(SympError::Dimension {
                expected: self.dim(),
                got: t.rows().max(t.cols()),
            });
        }
        let j = self.gram_matrix().map(F::from_rational);
        let m = t.transpose().matmul(&j).matmul(t);
        let c = m.get(self.e(0), self.f(0)).clone() * j.get(self.e(0), self.f(0)).inv().expect("nonzero");
        Ok((m == j.scale(&c)).then_some(c))
    }

    /// True iff `NᵀJ + JN = 0` (infinitesimally symplectic).
    pub fn is_symplectic_algebra<F: Field>(&self, n: &Matrix<F>) -> Result<bool, SympError> {
        if n.rows() != self.dim() || n.cols() != self.dim() {
            return Err(SympError::Dimension {
                expected: self.dim(),
                got: n.rows().max(n.cols()),
            });
        }
        let j = self.gram_matrix().map(F::from_rational);
        Ok(n.transpose().matmul(&j).add(&j.matmul(n)).is_zero())
    }
}
