//! Properties of the Hodge star on a diagonal Hermitian space.

use proptest::prelude::*;

use hodgecy::exactnum::{q, Field, Rational};
use hodgecy::hodgestar::{Ext, HermitianDiagSpace};
use hodgecy::sampling::Sampler;

fn radicand() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![1i64, 2, 3, 7])
}

fn random_space(s: &mut Sampler, n: usize, e: i64) -> HermitianDiagSpace<Rational> {
    HermitianDiagSpace::new(n, s.diagonal(2 * n, 4), e).unwrap()
}

fn random_ext(s: &mut Sampler, e: i64) -> Ext<Rational> {
    Ext::new(s.rational(5), s.rational(5), -e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_antilinear(n in 1usize..=3, e in radicand(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let space = random_space(&mut s, n, e);
        let alpha = random_ext(&mut s, e);
        let w: Vec<Ext<Rational>> = (0..space.dim()).map(|_| random_ext(&mut s, e)).collect();
        let scaled: Vec<_> = w.iter().map(|x| alpha.clone() * x.clone()).collect();
        let rhs: Vec<_> = space.star(&w).into_iter().map(|x| alpha.conj() * x).collect();
        prop_assert_eq!(space.star(&scaled), rhs);
    }

    #[test]
    fn star_squares_to_the_signed_discriminant(n in 1usize..=3, e in radicand(), seed in any::<u64>()) {
        let space = random_space(&mut Sampler::new(seed), n, e);
        let prod: Rational = space.diag().iter().product();
        let sign = if n % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(space.star_square().unwrap(), Ext::from_rational(&(sign * prod)));
        prop_assert!(space.defining_identity_holds());
    }

    #[test]
    fn volume_rescales_star(n in 1usize..=3, e in radicand(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let space = random_space(&mut s, n, e);
        let c = random_ext(&mut s, e);
        prop_assume!(c.norm() != q(0));
        let w: Vec<Ext<Rational>> = (0..space.dim()).map(|_| random_ext(&mut s, e)).collect();
        let scaled = space.clone().with_volume(c.clone());
        let rhs: Vec<_> = space.star(&w).into_iter().map(|x| c.clone() * x).collect();
        prop_assert_eq!(scaled.star(&w), rhs);
        prop_assert_eq!(
            scaled.star_square().unwrap(),
            Ext::from_rational(&c.norm()) * space.star_square().unwrap()
        );
    }

    #[test]
    fn star_commutes_with_unitary_diagonals(n in 1usize..=3, e in radicand(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let space = random_space(&mut s, n, e);
        let g = s.norm_one_diagonal(2 * n, e);
        prop_assert!(space.equivariance_sample(&g).unwrap());
    }
}
