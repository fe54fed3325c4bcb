//! Nilpotent monodromy operators: the weight filtration centered at 3,
//! Jordan profiles, the Type I–IV trichotomy, the Picard–Lefschetz test and
//! the intermediate-Jacobian condition at special points.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::matrix::{image_basis, span_basis, subspace_intersection, subspace_sum};
use crate::exactnum::{fmt_rational, parse_rational, Field, Matrix, QuadScalar, Rational};
use crate::exactnum::field::squarefree_decompose;
use crate::symplectic::{SympError, SympSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LmhsError {
    #[error("operator is not nilpotent of order at most 4")]
    NotNilpotent,
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("operator is not compatible with the symplectic form")]
    NotSymplectic,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the pair is not symplectic: ⟨α, β⟩ = 0")]
    DegeneratePair,
    #[error("quadratic must be irreducible with non-real roots")]
    BadQuadratic,
    #[error("r₁ and r₂ must differ")]
    EqualShifts,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Symp(#[from] SympError),
}

/// A rational nilpotent matrix with `N⁴ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentOp {
    n: Matrix<Rational>,
    gram: Option<Matrix<Rational>>,
}

impl NilpotentOp {
    /// Checks `N⁴ = 0`.
    pub fn new(n: Matrix<Rational>) -> Result<Self, LmhsError> {
        if !n.is_square() {
            return Err(LmhsError::NotSquare(n.rows(), n.cols()));
        }
        if !n.pow(4).is_zero() {
            return Err(LmhsError::NotNilpotent);
        }
        Ok(Self { n, gram: None })
    }

    /// Also checks `NᵀJ + JN = 0` for the given Gram matrix.
    pub fn with_gram(n: Matrix<Rational>, gram: &Matrix<Rational>) -> Result<Self, LmhsError> {
        let mut op = Self::new(n)?;
        if gram.rows() != op.dim() || !infinitesimally_preserves(&op.n, gram) {
            return Err(LmhsError::NotSymplectic);
        }
        op.gram = Some(gram.clone());
        Ok(op)
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.n
    }

    pub fn dim(&self) -> usize {
        self.n.rows()
    }

    /// True if a compatible Gram matrix was attached at construction.
    pub fn is_flagged(&self) -> bool {
        self.gram.is_some()
    }

    /// Infinitesimally symplectic for the attached Gram matrix, or for the
    /// standard one when none was attached.
    pub fn is_symplectic(&self) -> bool {
        match &self.gram {
            Some(g) => infinitesimally_preserves(&self.n, g),
            None if self.dim().is_multiple_of(2) && self.dim() >= 2 => {
                let g = SympSpace::new(self.dim() / 2 - 1).gram_matrix();
                infinitesimally_preserves(&self.n, &g)
            }
            None => false,
        }
    }

    /// `rank Nᵏ` for `k = 0..=4`.
    pub fn rank_sequence(&self) -> [usize; 5] {
        let mut out = [self.dim(), 0, 0, 0, 0];
        let mut p = self.n.clone();
        for r in out.iter_mut().skip(1) {
            *r = p.rank();
            p = p.matmul(&self.n);
        }
        out
    }

    /// Dense JSON matrix of rational strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.n
                .to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(|x| json!(fmt_rational(x))).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, LmhsError> {
        let rows = v.as_array().ok_or_else(|| LmhsError::Json("expected an array".into()))?;
        let mut data = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| LmhsError::Json("expected rows".into()))?;
            let mut row = Vec::new();
            for x in r {
                let s = x.as_str().ok_or_else(|| LmhsError::Json("expected strings".into()))?;
                row.push(parse_rational(s).map_err(|e| LmhsError::Json(e.to_string()))?);
            }
            data.push(row);
        }
        let m = Matrix::from_rows(data).map_err(|e| LmhsError::Json(e.to_string()))?;
        Self::new(m)
    }
}

fn infinitesimally_preserves(n: &Matrix<Rational>, j: &Matrix<Rational>) -> bool {
    n.transpose().matmul(j).add(&j.matmul(n)).is_zero()
}

/// `W₀ ⊆ … ⊆ W₆`, each as an exact basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFiltration {
    dim: usize,
    pieces: Vec<Vec<Vec<Rational>>>,
}

impl WeightFiltration {
    /// Basis of `W_k` (`W_k = 0` for `k < 0`, everything for `k > 6`).
    pub fn w(&self, k: i32) -> Vec<Vec<Rational>> {
        if k < 0 {
            Vec::new()
        } else if k > 6 {
            self.pieces[6].clone()
        } else {
            self.pieces[k as usize].clone()
        }
    }

    pub fn dim_w(&self, k: i32) -> usize {
        self.w(k).len()
    }

    /// `dim W_k / W_{k−1}`.
    pub fn graded_dim(&self, k: i32) -> usize {
        self.dim_w(k) - self.dim_w(k - 1)
    }

    /// Graded dimensions at weights `6, 5, …, 0`.
    pub fn graded(&self) -> [usize; 7] {
        let mut out = [0; 7];
        for (i, k) in (0..=6).rev().enumerate() {
            out[i] = self.graded_dim(k);
        }
        out
    }

    /// Checks nesting, `N W_k ⊆ W_{k−2}` and that `Nᵏ : Gr_{3+k} → Gr_{3−k}`
    /// is bijective for `k = 1, 2, 3`.
    pub fn verify(&self, n: &NilpotentOp) -> bool {
        let dim = self.dim;
        if self.dim_w(6) != dim {
            return false;
        }
        for k in 0..6 {
            let sum = subspace_sum(&self.w(k), &self.w(k + 1), dim);
            if sum.len() != self.dim_w(k + 1) {
                return false;
            }
        }
        let m = n.matrix();
        for k in 0..=6 {
            let lower = self.w(k - 2);
            let images: Vec<Vec<Rational>> = self.w(k).iter().map(|x| m.apply(x)).collect();
            if subspace_sum(&lower, &images, dim).len() != lower.len() {
                return false;
            }
        }
        let mut power = m.clone();
        for k in 1..=3 {
            let top = 3 + k;
            let bottom = 3 - k;
            let below = self.w(bottom - 1);
            let images: Vec<Vec<Rational>> = self.w(top).iter().map(|x| power.apply(x)).collect();
            let rank = subspace_sum(&below, &images, dim).len() - below.len();
            if rank != self.graded_dim(top) || rank != self.graded_dim(bottom) {
                return false;
            }
            power = power.matmul(m);
        }
        true
    }
}

/// `W_{3+ℓ} = Σ_{j ≥ max(0,−ℓ)} Ker N^{ℓ+j+1} ∩ Im Nʲ`.
pub fn weight_filtration(n: &NilpotentOp) -> WeightFiltration {
    let dim = n.dim();
    let m = n.matrix();
    let mut powers = vec![Matrix::identity(dim)];
    for k in 1..=4 {
        powers.push(powers[k - 1].matmul(m));
    }
    let kernel = |k: usize| -> Vec<Vec<Rational>> {
        if k >= 4 {
            (0..dim)
                .map(|i| {
                    let mut e = vec![Rational::zero(); dim];
                    e[i] = Rational::one();
                    e
                })
                .collect()
        } else {
            powers[k].kernel_basis()
        }
    };
    let images: Vec<Vec<Vec<Rational>>> = (0..=4).map(|j| image_basis(&powers[j])).collect();
    let pieces = (-3i32..=3)
        .map(|l| {
            let mut acc: Vec<Vec<Rational>> = Vec::new();
            for j in (-l).max(0)..=3 {
                let k = l + j + 1;
                if k <= 0 {
                    continue;
                }
                let part = subspace_intersection(&kernel(k as usize), &images[j as usize], dim);
                acc = subspace_sum(&acc, &part, dim);
            }
            acc
        })
        .collect();
    WeightFiltration { dim, pieces }
}

/// Jordan block sizes in decreasing order, read off `rank Nᵏ`.
pub fn jordan_profile(n: &NilpotentOp) -> Vec<usize> {
    let r = n.rank_sequence();
    let at_least = |k: usize| if k == 0 || k > 4 { 0 } else { r[k - 1] - r[k] };
    let mut blocks = Vec::new();
    for k in (1..=4).rev() {
        let exact = at_least(k) - if k < 4 { at_least(k + 1) } else { 0 };
        blocks.extend(std::iter::repeat_n(k, exact));
    }
    blocks
}

/// Degeneration type by the vanishing order of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmhsType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for LmhsType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
            Self::IV => "IV",
        };
        f.write_str(s)
    }
}

pub fn lmhs_type(n: &NilpotentOp) -> LmhsType {
    let r = n.rank_sequence();
    if r[1] == 0 {
        LmhsType::I
    } else if r[2] == 0 {
        LmhsType::II
    } else if r[3] == 0 {
        LmhsType::III
    } else {
        LmhsType::IV
    }
}

/// Picard–Lefschetz test `Nω = 0` for a Type II operator.
pub fn is_picard_lefschetz(n: &NilpotentOp, omega: &[Rational]) -> Result<bool, LmhsError> {
    if omega.len() != n.dim() {
        return Err(LmhsError::Precondition("ω has the wrong length".into()));
    }
    if omega.iter().all(Zero::is_zero) {
        return Err(LmhsError::Precondition("ω must be nonzero".into()));
    }
    if lmhs_type(n) != LmhsType::II {
        return Err(LmhsError::Precondition("needs N ≠ 0 and N² = 0".into()));
    }
    Ok(n.matrix().apply(omega).iter().all(Zero::is_zero))
}

/// Summary of a degeneration.
#[derive(Clone, Debug, PartialEq)]
pub struct LmhsVerdict {
    pub kind: LmhsType,
    pub jordan: Vec<usize>,
    pub graded: [usize; 7],
    pub picard_lefschetz: Option<bool>,
}

impl LmhsVerdict {
    /// Classifies `N`; the Picard–Lefschetz flag is evaluated at `omega` when
    /// the operator is of Type II.
    pub fn of(n: &NilpotentOp, omega: Option<&[Rational]>) -> Self {
        let kind = lmhs_type(n);
        let picard_lefschetz = match (kind, omega) {
            (LmhsType::II, Some(w)) => is_picard_lefschetz(n, w).ok(),
            _ => None,
        };
        Self {
            kind,
            jordan: jordan_profile(n),
            graded: weight_filtration(n).graded(),
            picard_lefschetz,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "type": self.kind.to_string(),
            "jordan": self.jordan,
            "graded": self.graded,
        });
        if let Some(pl) = self.picard_lefschetz {
            v["picard_lefschetz"] = json!(pl);
        }
        v
    }
}

/// Imaginary quadratic scalar.
pub type QuadQ = QuadScalar<Rational>;

/// Checks `⟨α,ω⟩ = ⟨β,ω⟩ = 0` and `V^{2,1} ∩ (ℂα + ℂβ) ≠ 0`.
pub fn ij_condition(
    space: &SympSpace,
    omega_z: &[QuadQ],
    v21_basis: &[Vec<QuadQ>],
    alpha: &[Rational],
    beta: &[Rational],
) -> Result<bool, LmhsError> {
    if space.pair(alpha, beta)?.is_zero() {
        return Err(LmhsError::DegeneratePair);
    }
    let lift = |v: &[Rational]| -> Vec<QuadQ> { v.iter().map(QuadQ::from_rational).collect() };
    let (a, b) = (lift(alpha), lift(beta));
    if !space.pair(&a, omega_z)?.is_zero() || !space.pair(&b, omega_z)?.is_zero() {
        return Ok(false);
    }
    let v21 = span_basis(v21_basis, space.dim());
    let mut all = v21.clone();
    all.push(a);
    all.push(b);
    Ok(span_basis(&all, space.dim()).len() < v21.len() + 2)
}

/// A rational quadratic `a t² + b t + d`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalQuadratic {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl RationalQuadratic {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        Self { a, b, d }
    }

    pub fn discriminant(&self) -> Rational {
        &self.b * &self.b - Rational::from_integer(4.into()) * &self.a * &self.d
    }

    /// Irreducible over ℚ with non-real roots.
    pub fn is_imaginary_irreducible(&self) -> bool {
        !self.a.is_zero() && self.discriminant().is_negative()
    }

    /// The root with positive imaginary part, as `x + y√m` with `m < 0`
    /// square-free.
    pub fn upper_root(&self) -> Result<QuadQ, LmhsError> {
        if !self.is_imaginary_irreducible() {
            return Err(LmhsError::BadQuadratic);
        }
        // D = N/M with M > 0; √D = √(N·M)/M and N·M = s²m.
        let disc = self.discriminant();
        let num = disc.numer() * disc.denom();
        let num: i64 = num.try_into().map_err(|_| LmhsError::BadQuadratic)?;
        let (s, m) = squarefree_decompose(num);
        let den = Rational::from_integer(disc.denom().clone());
        let two_a = &self.a + &self.a;
        let re = -&self.b / &two_a;
        let mut im = Rational::from_integer(s.into()) / (den * &two_a);
        if im.is_negative() {
            im = -im;
        }
        QuadQ::new(re, im, m).map_err(|_| LmhsError::BadQuadratic)
    }
}

/// Coefficients `(q₀, q₁, q₂, q₃)` of `(t + r)P(t)`.
fn shifted_cubic(p: &RationalQuadratic, r: &Rational) -> [Rational; 4] {
    [
        r * &p.d,
        &p.d + r * &p.b,
        &p.b + r * &p.a,
        p.a.clone(),
    ]
}

/// The vector `q₀e₀ + q₁e₁ − q₂/(3c)·f₁ + q₃/c·f₀`, whose pairing with
/// `ω(z) = −cz³e₀ + 3cz²e₁ + zf₁ + f₀` is `(z + r)P(z)`.
fn special_vector(p: &RationalQuadratic, c: &Rational, r: &Rational) -> Vec<Rational> {
    let [q0, q1, q2, q3] = shifted_cubic(p, r);
    let three = Rational::from_integer(3.into());
    vec![q0, q1, -(q2 / (three * c)), q3 / c]
}

/// The pair `(α, β)` attached to `P`, `c` and `r₁ ≠ r₂`, with `α` rescaled by
/// `c / (4ad − b²)` so that `⟨α, β⟩ = κ(r₁ − r₂)` for a fixed `κ`.
pub fn special_point_vectors(
    p: &RationalQuadratic,
    c: &Rational,
    r1: &Rational,
    r2: &Rational,
) -> Result<(Vec<Rational>, Vec<Rational>), LmhsError> {
    if !p.is_imaginary_irreducible() {
        return Err(LmhsError::BadQuadratic);
    }
    if r1 == r2 {
        return Err(LmhsError::EqualShifts);
    }
    if c.is_zero() {
        return Err(LmhsError::Precondition("c must be nonzero".into()));
    }
    let scale = c / -p.discriminant();
    let alpha = special_vector(p, c, r1).into_iter().map(|x| x * &scale).collect();
    Ok((alpha, special_vector(p, c, r2)))
}

/// `ω(z) = −cz³e₀ + 3cz²e₁ + zf₁ + f₀` at a quadratic point.
pub fn special_omega(c: &Rational, z: &QuadQ) -> Vec<QuadQ> {
    let cc = QuadQ::from_rational(c);
    let three = QuadQ::from_rational(&Rational::from_integer(3.into()));
    let z2 = z.clone() * z.clone();
    let z3 = z2.clone() * z.clone();
    vec![-(cc.clone() * z3), three * cc * z2, z.clone(), QuadQ::one()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::matrix::int_matrix;
    use crate::exactnum::{q, qf};

    fn jordan4() -> NilpotentOp {
        NilpotentOp::new(int_matrix(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]))
            .unwrap()
    }

    #[test]
    fn rejects_non_nilpotent() {
        assert_eq!(NilpotentOp::new(Matrix::identity(3)), Err(LmhsError::NotNilpotent));
    }

    #[test]
    fn zero_operator() {
        let n = NilpotentOp::new(Matrix::zeros(8, 8)).unwrap();
        let w = weight_filtration(&n);
        assert_eq!(w.dim_w(2), 0);
        assert_eq!(w.dim_w(3), 8);
        assert_eq!(w.graded(), [0, 0, 0, 8, 0, 0, 0]);
        assert!(w.verify(&n));
        assert_eq!(jordan_profile(&n), vec![1; 8]);
        assert_eq!(lmhs_type(&n), LmhsType::I);
    }

    #[test]
    fn single_block() {
        let n = jordan4();
        let w = weight_filtration(&n);
        assert_eq!(w.graded(), [1, 0, 1, 0, 1, 0, 1]);
        assert!(w.verify(&n));
        assert_eq!(jordan_profile(&n), vec![4]);
        assert_eq!(lmhs_type(&n), LmhsType::IV);
    }

    #[test]
    fn verify_rejects_wrong_filtration() {
        let n = jordan4();
        let mut w = weight_filtration(&n);
        w.pieces.swap(0, 2);
        assert!(!w.verify(&n));
    }

    #[test]
    fn picard_lefschetz_checks() {
        let n = NilpotentOp::new(int_matrix(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(is_picard_lefschetz(&n, &[q(1), q(0), q(0)]), Ok(true));
        assert_eq!(is_picard_lefschetz(&n, &[q(0), q(1), q(0)]), Ok(false));
        assert!(is_picard_lefschetz(&jordan4(), &[q(1), q(0), q(0), q(0)]).is_err());
        assert!(is_picard_lefschetz(&n, &[q(0), q(0), q(0)]).is_err());
    }

    #[test]
    fn upper_root_of_t2_plus_1() {
        let p = RationalQuadratic::new(q(1), q(0), q(1));
        let z = p.upper_root().unwrap();
        assert_eq!(z, QuadQ::gaussian(q(0), q(1)));
        let p = RationalQuadratic::new(q(2), q(1), q(1));
        let z = p.upper_root().unwrap();
        let val = QuadQ::from_rational(&q(2)) * z.clone() * z.clone() + z.clone() + QuadQ::one();
        assert!(val.is_zero());
        assert!(z.im_coeff().is_positive());
        assert!(RationalQuadratic::new(q(1), q(0), q(-1)).upper_root().is_err());
    }

    #[test]
    fn special_pair_for_i() {
        let p = RationalQuadratic::new(q(1), q(0), q(1));
        let (a, b) = special_point_vectors(&p, &q(1), &q(0), &q(1)).unwrap();
        let s = SympSpace::new(1);
        assert_eq!(s.pair(&a, &b).unwrap(), qf(-1, 3));
        assert!(special_point_vectors(&p, &q(1), &q(1), &q(1)).is_err());
        assert!(special_point_vectors(&RationalQuadratic::new(q(1), q(0), q(-4)), &q(1), &q(0), &q(1)).is_err());
    }

    #[test]
    fn ij_rejects_degenerate_pair() {
        let s = SympSpace::new(1);
        let z = QuadQ::gaussian(q(0), q(1));
        let om = special_omega(&q(1), &z);
        let e0 = vec![q(1), q(0), q(0), q(0)];
        assert_eq!(ij_condition(&s, &om, &[], &e0, &e0), Err(LmhsError::DegeneratePair));
    }
}
