//! Properties of the exact arithmetic layer.

use num_traits::Zero;
use proptest::prelude::*;

use hodgecy::exactnum::{q, signature, Matrix, QuadScalar, Rational, SparsePoly};
use hodgecy::sampling::{cubic_exponents, Sampler};

fn int_entries(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, n * n)
}

fn symmetric(n: usize, raw: &[i64]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, q(raw[i * n + j]));
            m.set(j, i, q(raw[i * n + j]));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_is_a_congruence_invariant(n in 1usize..=4, raw in int_entries(4), seed in any::<u64>()) {
        let m = symmetric(n, &raw);
        let mut s = Sampler::new(seed);
        let l = s.unimodular(n);
        let u = s.unimodular(n).transpose();
        let a = l.matmul(&u);
        let congruent = a.transpose().matmul(&m).matmul(&a);
        prop_assert_eq!(signature(&m).unwrap(), signature(&congruent).unwrap());
    }

    #[test]
    fn char_poly_annihilates(n in 1usize..=4, raw in int_entries(4)) {
        let m = Matrix::new(n, n, raw[..n * n].iter().map(|&x| q(x)).collect()).unwrap();
        let coeffs = m.char_poly_coeffs().unwrap();
        prop_assert_eq!(coeffs.len(), n + 1);
        let mut acc = Matrix::<Rational>::zeros(n, n);
        for c in &coeffs {
            acc = acc.matmul(&m).add(&Matrix::identity(n).scale(c));
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn quadratic_norm_is_multiplicative(
        m in prop::sample::select(vec![-1i64, -2, -3, -7, 2, 5]),
        xs in prop::collection::vec(-9i64..=9, 4),
    ) {
        let x = QuadScalar::new(q(xs[0]), q(xs[1]), m).unwrap();
        let y = QuadScalar::new(q(xs[2]), q(xs[3]), m).unwrap();
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(h in 1usize..=3, seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let random_poly = |s: &mut Sampler| {
            SparsePoly::from_terms(h, cubic_exponents(h).into_iter().map(|e| (e, s.rational(4))))
        };
        let (a, b) = (random_poly(&mut s), random_poly(&mut s));
        let x = s.rational_vec(h, 5);
        prop_assert_eq!((a.clone() * b.clone()).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((a.clone() + b.clone()).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert!((a.clone() + (-a)).is_zero());
    }
}
