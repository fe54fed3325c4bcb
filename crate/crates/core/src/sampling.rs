//! Seeded generators for random cubics, points and auxiliary data.

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic_family::{variety_position, CubicForm, QPoly, VarietyPosition};
use crate::exactnum::{q, qf, Field, Matrix, QuadScalar, Rational, SparsePoly};
use crate::hodge_riemann::ComplexPoint;
use crate::hodgestar::{norm_one, Ext};
use crate::invariant_cubics::CubicModel;
use crate::lmhs::RationalQuadratic;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Deterministic random source.
pub struct Sampler {
    rng: ChaCha8Rng,
}

/// Exponent vectors of all degree-3 monomials in `h` variables.
pub fn cubic_exponents(h: usize) -> Vec<Vec<u32>> {
    (0..h)
        .combinations_with_replacement(3)
        .map(|idx| {
            let mut e = vec![0u32; h];
            for i in idx {
                e[i] += 1;
            }
            e
        })
        .collect()
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero_int(&mut self, bound: i64) -> i64 {
        loop {
            let x = self.int(-bound, bound);
            if x != 0 {
                return x;
            }
        }
    }

    /// `a/b` with `|a| ≤ bound`, `1 ≤ b ≤ bound`.
    pub fn rational(&mut self, bound: i64) -> Rational {
        let a = self.int(-bound, bound);
        let b = self.int(1, bound);
        qf(a, b)
    }

    pub fn nonzero_rational(&mut self, bound: i64) -> Rational {
        loop {
            let x = self.rational(bound);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn rational_vec(&mut self, n: usize, bound: i64) -> Vec<Rational> {
        (0..n).map(|_| self.rational(bound)).collect()
    }

    pub fn int_vec(&mut self, n: usize, bound: i64) -> Vec<Rational> {
        (0..n).map(|_| q(self.int(-bound, bound))).collect()
    }

    /// Nonzero homogeneous cubic with integer coefficients in `[−bound, bound]`.
    pub fn cubic(&mut self, h: usize, bound: i64) -> CubicForm {
        let exps = cubic_exponents(h);
        loop {
            let terms: Vec<(Vec<u32>, Rational)> = exps
                .iter()
                .map(|e| (e.clone(), q(self.int(-bound, bound))))
                .collect();
            let poly = SparsePoly::from_terms(h, terms);
            if !poly.is_zero() {
                return CubicForm::new(h, poly).expect("homogeneous cubic");
            }
        }
    }

    /// `(φ, v)` with `v` in the requested position relative to `V(φ)`.
    /// Points on `V(φ)` need `h ≥ 2`.
    pub fn cubic_with_point(
        &mut self,
        h: usize,
        bound: i64,
        pos: VarietyPosition,
    ) -> (CubicForm, Vec<Rational>) {
        assert!(h >= 2 || pos == VarietyPosition::Off, "V(φ) has no nonzero points when h = 1");
        loop {
            let (phi, v) = match pos {
                VarietyPosition::Off => (self.cubic(h, bound), self.int_vec(h, 3)),
                VarietyPosition::Smooth => self.on_hypersurface(h, bound),
                VarietyPosition::Singular => self.singular_point(h, bound),
            };
            if v.iter().any(|x| !x.is_zero()) && variety_position(&phi, &v) == pos {
                return (phi, v);
            }
        }
    }

    fn on_hypersurface(&mut self, h: usize, bound: i64) -> (CubicForm, Vec<Rational>) {
        let phi = self.cubic(h, bound);
        let v = self.int_vec(h, 3);
        let Some(k) = v.iter().position(|x| !x.is_zero()) else {
            return (phi, v);
        };
        let mut e = vec![0u32; h];
        e[k] = 3;
        let vk = &v[k];
        let corr = phi.eval(&v) / (vk * vk * vk);
        let poly = phi.poly().clone() - SparsePoly::monomial(h, e, corr);
        (CubicForm::new(h, poly).expect("still a cubic"), v)
    }

    /// A cubic singular at `A⁻¹e₁`: `φ(Az)` with `φ` at most linear in `z₁`.
    fn singular_point(&mut self, h: usize, bound: i64) -> (CubicForm, Vec<Rational>) {
        let exps: Vec<Vec<u32>> = cubic_exponents(h).into_iter().filter(|e| e[0] <= 1).collect();
        let terms: Vec<(Vec<u32>, Rational)> = exps
            .iter()
            .map(|e| (e.clone(), q(self.int(-bound, bound))))
            .collect();
        let base = SparsePoly::from_terms(h, terms);
        let a = self.unimodular(h);
        let images: Vec<QPoly> = (0..h)
            .map(|i| {
                SparsePoly::from_terms(
                    h,
                    (0..h).map(|j| {
                        let mut e = vec![0u32; h];
                        e[j] = 1;
                        (e, a.get(i, j).clone())
                    }),
                )
            })
            .collect();
        let poly = base.substitute(&images);
        let inv = a.inverse().expect("unimodular");
        let mut e1 = vec![Rational::zero(); h];
        e1[0] = q(1);
        let v = inv.apply(&e1);
        let poly = if poly.is_zero() {
            let mut e = vec![0u32; h];
            e[h - 1] = 3;
            SparsePoly::monomial(h, e, q(1))
        } else {
            poly
        };
        (CubicForm::new(h, poly).expect("cubic"), v)
    }

    /// Lower-unitriangular integer matrix.
    pub fn unimodular(&mut self, n: usize) -> Matrix<Rational> {
        let mut a = Matrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                a.set(i, j, q(self.int(-2, 2)));
            }
        }
        a
    }

    /// A point `x + iy` with rational coordinates.
    pub fn complex_point(&mut self, h: usize, bound: i64) -> ComplexPoint {
        let re = self.rational_vec(h, bound);
        let im = self.rational_vec(h, bound);
        ComplexPoint::new(re, im).expect("equal lengths")
    }

    /// `t² + bt + d` style quadratic `a t² + b t + d` with negative discriminant.
    pub fn imaginary_quadratic(&mut self, bound: i64) -> RationalQuadratic {
        loop {
            let p = RationalQuadratic::new(
                self.nonzero_rational(bound),
                self.rational(bound),
                self.rational(bound),
            );
            if p.is_imaginary_irreducible() {
                return p;
            }
        }
    }

    /// Two distinct rationals.
    pub fn distinct_pair(&mut self, bound: i64) -> (Rational, Rational) {
        loop {
            let (a, b) = (self.rational(bound), self.rational(bound));
            if a != b {
                return (a, b);
            }
        }
    }

    /// Nonzero diagonal entries.
    pub fn diagonal(&mut self, len: usize, bound: i64) -> Vec<Rational> {
        (0..len).map(|_| self.nonzero_rational(bound)).collect()
    }

    /// Diagonal unitary of determinant one in `ℚ(√−e)`, built from pairs
    /// `(u, u⁻¹)` of norm-one elements.
    pub fn norm_one_diagonal(&mut self, len: usize, e: i64) -> Vec<Ext<Rational>> {
        let mut g = vec![QuadScalar::from_rational(&q(1)); len];
        for k in 0..len / 2 {
            let (x, y) = (self.nonzero_int(5), self.nonzero_int(5));
            let u = norm_one::<Rational>(x, y, e).expect("valid radicand");
            let inv = u.inv().expect("norm one");
            g[2 * k] = u;
            g[2 * k + 1] = inv;
        }
        g.shuffle(&mut self.rng);
        g
    }

    /// Nonzero `w` supported on pairwise skew variables of a squarefree cubic
    /// model, so that every monomial meets the support at most once and
    /// `B(w, w) = 0`.
    pub fn skew_support_vector(&mut self, model: &CubicModel, bound: i64) -> Vec<Rational> {
        let n = model.nvars();
        let mut linked = vec![vec![false; n]; n];
        for (idx, _) in model.monomials() {
            for (a, b) in idx.iter().tuple_combinations() {
                linked[*a][*b] = true;
                linked[*b][*a] = true;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut self.rng);
        let size = self.rng.gen_range(1..=n);
        let mut support: Vec<usize> = Vec::new();
        for v in order {
            if support.len() >= size {
                break;
            }
            if support.iter().all(|&u| !linked[u][v]) {
                support.push(v);
            }
        }
        let mut w = vec![Rational::zero(); n];
        for v in support {
            w[v] = self.nonzero_rational(bound);
        }
        w
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic_family::TubeModel;
    use crate::invariant_cubics::cartan_cubic;

    #[test]
    fn deterministic() {
        let a = Sampler::new(3).cubic(3, 9);
        let b = Sampler::new(3).cubic(3, 9);
        assert_eq!(a, b);
        assert_eq!(cubic_exponents(3).len(), 10);
    }

    #[test]
    fn positions() {
        let mut s = Sampler::new(11);
        for pos in [VarietyPosition::Off, VarietyPosition::Smooth, VarietyPosition::Singular] {
            let lo = if pos == VarietyPosition::Off { 1 } else { 2 };
            for h in lo..=4 {
                let (phi, v) = s.cubic_with_point(h, 5, pos);
                assert_eq!(variety_position(&phi, &v), pos);
            }
        }
    }

    #[test]
    fn skew_vectors_are_null() {
        let model = cartan_cubic();
        let tube = TubeModel::from_cubic(&model.to_cubic_form().unwrap());
        let mut s = Sampler::new(5);
        for _ in 0..5 {
            let w = s.skew_support_vector(&model, 4);
            assert!(w.iter().any(|x| !x.is_zero()));
            assert!(tube.b(&w, &w).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn unitary_diagonal() {
        let mut s = Sampler::new(9);
        let g = s.norm_one_diagonal(6, 7);
        let det = g.iter().fold(QuadScalar::from_rational(&q(1)), |a, x| a * x.clone());
        assert_eq!(det, QuadScalar::from_rational(&q(1)));
        assert!(g.iter().all(|x| x.norm() == q(1)));
    }
}
