//! Properties of the cubic period-map family.

use num_traits::Zero;
use proptest::prelude::*;

use hodgecy::cubic_family::{
    check_transversality, degenerate_restriction_holds, log_unipotent, omega_of, translation_matrix,
    variety_position, Normalization, QPoly, QuadricSystem, TubeModel, VarietyPosition,
};
use hodgecy::exactnum::Rational;
use hodgecy::sampling::{cubic_exponents, Sampler};
use hodgecy::symplectic::SympSpace;

fn position() -> impl Strategy<Value = VarietyPosition> {
    prop::sample::select(vec![VarietyPosition::Off, VarietyPosition::Smooth, VarietyPosition::Singular])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn translations_form_a_symplectic_group(h in 1usize..=4, seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let phi = s.cubic(h, 9);
        let (v, w) = (s.rational_vec(h, 5), s.rational_vec(h, 5));
        let vw: Vec<Rational> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
        let tv = translation_matrix(&phi, &v).unwrap();
        let tw = translation_matrix(&phi, &w).unwrap();
        prop_assert!(SympSpace::new(h).is_symplectic_matrix(&tv).unwrap());
        prop_assert_eq!(tv.matmul(&tw), translation_matrix(&phi, &vw).unwrap());
    }

    #[test]
    fn period_map_is_transversal(h in 1usize..=4, seed in any::<u64>()) {
        let phi = Sampler::new(seed).cubic(h, 9);
        prop_assert!(check_transversality(&omega_of(&phi, Normalization::Potential)));
        prop_assert!(check_transversality(&omega_of(&phi, Normalization::Standard)));
    }

    #[test]
    fn jordan_ranks_follow_the_position_of_v(h in 2usize..=4, pos in position(), seed in any::<u64>()) {
        let (phi, v) = Sampler::new(seed).cubic_with_point(h, 5, pos);
        let n = log_unipotent(&translation_matrix(&phi, &v).unwrap()).unwrap();
        let r = n.rank_sequence();
        prop_assert!(r[1] > 0);
        prop_assert_eq!(r[2] == 0, pos == VarietyPosition::Singular);
        prop_assert_eq!(r[3] == 0, pos != VarietyPosition::Off);
        prop_assert_eq!(r[4], 0);
        prop_assert_eq!(variety_position(&phi, &v), pos);
    }

    #[test]
    fn tube_orbit_matches_closed_form(h in 1usize..=4, seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let tube = TubeModel::from_cubic(&s.cubic(h, 6));
        let w = s.rational_vec(h, 4);
        prop_assert_eq!(tube.exp_orbit(&w).unwrap(), tube.exp_orbit_closed(&w));
        prop_assert!(tube.nilpotent(&w).unwrap().is_symplectic());
    }

    #[test]
    fn degenerate_extension_restricts_back(a in 1usize..=3, extra in 1usize..=2, seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let quadrics: Vec<QPoly> = (0..extra)
            .map(|_| {
                let terms = cubic_exponents(a).into_iter().map(|mut e| {
                    // Lower the degree by one: drop one power of the first used variable.
                    let k = e.iter().position(|&x| x > 0).unwrap_or(0);
                    e[k] -= 1;
                    (e, s.rational(4))
                });
                QPoly::from_terms(a, terms)
            })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!quadrics.is_empty());
        let sys = QuadricSystem::new(a, quadrics).unwrap();
        prop_assert!(degenerate_restriction_holds(&sys));
    }
}
