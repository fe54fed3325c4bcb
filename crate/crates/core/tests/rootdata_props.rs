//! Properties of root data, representations and Hodge diamonds.

use num_traits::Signed;
use proptest::prelude::*;

use hodgecy::exactnum::q;
use hodgecy::rootdata::{
    complex_pair, domain_table, h0_eval, hodge_diamond, is_positive_integer, is_tube, minimal_twist,
    noncompact_half, opposition_permutation, real_rank, rep_weights, special_roots, verify_opposition,
    weight3_catalog, CatalogRanges, RootSystem, RootType,
};

fn root_system() -> impl Strategy<Value = RootSystem> {
    let cases: Vec<(RootType, usize)> = (1..=8)
        .map(|n| (RootType::A, n))
        .chain((2..=8).map(|n| (RootType::B, n)))
        .chain((2..=8).map(|n| (RootType::C, n)))
        .chain((4..=8).map(|n| (RootType::D, n)))
        .chain([(RootType::E, 6), (RootType::E, 7)])
        .collect();
    prop::sample::select(cases).prop_map(|(k, n)| RootSystem::new(k, n).unwrap())
}

/// Tube-type pairs: `(A_{2k−1}, α_k)`, `(B_n, α₁)`, `(C_n, α_n)`, `(D_n, α₁)`,
/// `(D_{2k}, α_{2k−1})`, `(D_{2k}, α_{2k})`, `(E₇, α₇)`.
fn listed_tube(kind: RootType, n: usize, i: usize) -> bool {
    match kind {
        RootType::A => n % 2 == 1 && i == n.div_ceil(2),
        RootType::B => i == 1,
        RootType::C => i == n,
        RootType::D => i == 1 || (n.is_multiple_of(2) && i >= n - 1),
        RootType::E => n == 7 && i == 7,
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn highest_weight_maximizes_h0(r in root_system()) {
        for i in special_roots(&r) {
            let lambda = r.fundamental(i).unwrap();
            let top = h0_eval(&r, i, &lambda).unwrap();
            for (w, _) in rep_weights(&r, i, 1).unwrap().iter() {
                if *w != lambda {
                    prop_assert!(h0_eval(&r, i, w).unwrap() < top);
                }
            }
        }
    }

    #[test]
    fn tube_iff_fixed_by_opposition(r in root_system()) {
        prop_assert!(verify_opposition(&r));
        let tau = opposition_permutation(&r);
        for i in special_roots(&r) {
            let tube = is_tube(&r, i).unwrap();
            prop_assert_eq!(tube, tau[i - 1] == i);
            prop_assert_eq!(tube, listed_tube(r.kind(), r.rank(), i));
        }
    }

    #[test]
    fn diamond_dimension_matches_representation(r in root_system()) {
        for i in special_roots(&r) {
            let dim = rep_weights(&r, i, 1).unwrap().total();
            let diamond = hodge_diamond(&r, i, 1, None).unwrap();
            prop_assert!(diamond.is_symmetric());
            if is_tube(&r, i).unwrap() {
                prop_assert_eq!(diamond.total(), dim);
            } else {
                prop_assert_eq!(diamond.total(), 2 * dim);
                let c = minimal_twist(&r, i, &r.fundamental(i).unwrap()).unwrap();
                prop_assert_eq!(complex_pair(&r, i, 1, &c).unwrap().plus.total(), dim);
            }
        }
    }

    #[test]
    fn real_rank_is_a_positive_integer(r in root_system()) {
        for i in special_roots(&r) {
            let k = real_rank(&r, i).unwrap();
            prop_assert!(is_positive_integer(&k));
            prop_assert!(k.is_positive() && k <= q(r.rank() as i64));
        }
    }
}

#[test]
fn first_hodge_number_counts_noncompact_roots() {
    for row in domain_table() {
        let (r, i) = row.family.root_datum().unwrap();
        let numbers = if row.tube {
            hodge_diamond(&r, i, 1, None).unwrap().numbers()
        } else {
            let c = minimal_twist(&r, i, &r.fundamental(i).unwrap()).unwrap();
            complex_pair(&r, i, 1, &c).unwrap().plus.numbers()
        };
        assert_eq!(numbers[1], noncompact_half(&r, i), "{}", row.label);
    }
}

#[test]
fn catalog_is_calabi_yau() {
    let cat = weight3_catalog(CatalogRanges::default()).unwrap();
    assert!(!cat.is_empty());
    for e in &cat {
        assert_eq!(e.diamond.weight(), 3, "{}", e.label);
        assert!(e.diamond.is_cy() && e.diamond.is_effective() && e.diamond.is_symmetric(), "{}", e.label);
    }
}
