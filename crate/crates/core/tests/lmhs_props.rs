//! Properties of limiting mixed Hodge structures.

use proptest::prelude::*;

use hodgecy::cubic_family::{log_unipotent, translation_matrix, TubeModel, VarietyPosition};
use hodgecy::invariant_cubics::cartan_cubic;
use hodgecy::lmhs::{jordan_profile, lmhs_type, weight_filtration, LmhsType};
use hodgecy::sampling::Sampler;

fn position() -> impl Strategy<Value = VarietyPosition> {
    prop::sample::select(vec![VarietyPosition::Off, VarietyPosition::Smooth, VarietyPosition::Singular])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weight_filtration_is_valid(h in 2usize..=4, pos in position(), seed in any::<u64>()) {
        let (phi, v) = Sampler::new(seed).cubic_with_point(h, 5, pos);
        let n = log_unipotent(&translation_matrix(&phi, &v).unwrap()).unwrap();
        let w = weight_filtration(&n);
        prop_assert!(w.verify(&n));
        prop_assert_eq!(w.graded().iter().sum::<usize>(), 2 * h + 2);
    }

    #[test]
    fn cubic_family_types_have_the_expected_shape(h in 2usize..=4, pos in position(), seed in any::<u64>()) {
        let (phi, v) = Sampler::new(seed).cubic_with_point(h, 5, pos);
        let n = log_unipotent(&translation_matrix(&phi, &v).unwrap()).unwrap();
        let graded = weight_filtration(&n).graded();
        match lmhs_type(&n) {
            LmhsType::IV => {
                let j = jordan_profile(&n);
                prop_assert_eq!(j.iter().filter(|&&b| b == 4).count(), 1);
                prop_assert!(!j.contains(&3));
                prop_assert_eq!(graded[5], 0);
            }
            LmhsType::III => prop_assert_eq!(graded[5], 2),
            LmhsType::II => prop_assert_eq!(pos, VarietyPosition::Singular),
            LmhsType::I => prop_assert!(false, "translations are never trivial"),
        }
    }
}

proptest! {
    // Each case builds the filtration of a 56-dimensional operator.
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn type_two_tube_middle_piece(seed in any::<u64>()) {
        let model = cartan_cubic();
        let tube = TubeModel::from_cubic(&model.to_cubic_form().unwrap());
        let w = Sampler::new(seed).skew_support_vector(&model, 4);
        let n = tube.nilpotent(&w).unwrap();
        prop_assert_eq!(lmhs_type(&n), LmhsType::II);
        let h = tube.h();
        let rank_b = tube.b_matrix(&w).rank();
        // (Ker B_w / ⟨w⟩) ⊕ (w⊥ / Im B_w).
        let expected = (h - rank_b - 1) + (h - 1 - rank_b);
        prop_assert_eq!(weight_filtration(&n).graded()[3], expected);
    }
}
